#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace lerw {

// Flat key=value experiment configuration. Unknown keys are errors; list
// values are comma separated. See README for the key reference.
struct ExperimentConfig {
  std::string experiment;
  int d = 0;
  std::vector<std::int64_t> n_list;
  std::vector<double> alpha_list;
  double epsilon = 0.1;
  std::uint64_t replicas = 0;
  std::uint64_t seed = 0;
  std::vector<double> lambda_grid;
  int threads = 0;  // 0: take LERW_THREADS or 1
  std::string out;
  double c1 = 10.0;
  std::vector<std::int64_t> r_list;
  int cycles = 8;
  int max_i = 4;
  int starts = 20;
  std::map<std::string, double> bands;  // band_* acceptance knobs

  static ExperimentConfig parse(std::istream& in);
  static ExperimentConfig parse_file(const std::string& path);

  void validate() const;         // throws std::invalid_argument
  std::string canonical() const; // fixed key order, locale-free numbers
  std::uint64_t config_hash() const;
  int effective_threads() const;
};

struct RunRecord {
  nlohmann::json header;
  std::vector<nlohmann::json> replicas;  // ordered by replica index
  nlohmann::json summary;
};

// Executes the experiment, writing a line-delimited JSON record (header,
// replicas in index order, summary) plus a sidecar CSV of summary scalars
// when config.out is set. Re-running against an existing record with the
// same config hash resumes from the completed replicas.
RunRecord run_experiment(const ExperimentConfig& config);

RunRecord load_record(const std::string& path);

// Prints human-readable summaries; with svg=true renders curves/fits next
// to the record file. Returns 0/1/2 with CLI exit-code semantics.
int report_record(const std::string& path, bool svg, std::ostream& os);

// The canned oracle three-way agreement check (C5 and K4 plus the complete
// graph length-law identity). Returns 0 when all checks hold.
int oracle_check(std::ostream& os);

// Minimal SVG line plot used by report --svg.
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<std::pair<double, double>>& points,
                    bool log_y);

}  // namespace lerw
