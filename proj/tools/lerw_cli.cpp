// Command-line front end. Talks to the library exclusively through the C API.
#include <cstdio>

#include <CLI11.hpp>

#include "lerw/capi.h"

namespace {

int status_to_exit(lerw_status s) {
  switch (s) {
    case LERW_OK:
      return 0;
    case LERW_EINVAL:
      return 1;
    default:
      return 2;
  }
}

int report_failure(lerw_status s) {
  if (s != LERW_OK) std::fprintf(stderr, "error: %s\n", lerw_last_error());
  return status_to_exit(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"loop-erased walk experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", lerw_version());

  std::string config_path;
  auto* run = app.add_subcommand("run", "run an experiment from a config file");
  run->add_option("config", config_path, "key=value config file")->required();

  std::string record_path;
  bool svg = false;
  auto* report = app.add_subcommand("report", "summarize a run record");
  report->add_option("record", record_path, "record file written by run")->required();
  report->add_flag("--svg", svg, "also render SVG plots next to the record");

  auto* oracle = app.add_subcommand("oracle-check", "run the oracle agreement checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (run->parsed()) return report_failure(lerw_run(config_path.c_str()));
  if (report->parsed())
    return report_failure(lerw_report(record_path.c_str(), svg ? 1 : 0));
  if (oracle->parsed()) return report_failure(lerw_oracle_check());
  return 1;
}
