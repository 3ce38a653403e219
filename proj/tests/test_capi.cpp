#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "lerw/capi.h"

namespace fs = std::filesystem;

TEST_CASE("library identification strings") {
  CHECK(lerw_version() != nullptr);
  CHECK(std::strlen(lerw_version()) > 0);
  CHECK(std::string(lerw_rng_algorithm()) == "splitmix64-v1");
}

TEST_CASE("walker stepping stays adjacent and is seed-deterministic") {
  lerw_walker* w = nullptr;
  REQUIRE(lerw_walker_create(8, 3, nullptr, 42, 0, &w) == LERW_OK);
  REQUIRE(w != nullptr);
  CHECK(lerw_walker_vertex(w) == 0);

  std::int32_t prev[3] = {0, 0, 0};
  std::vector<std::int64_t> trace;
  for (int k = 0; k < 1000; ++k) {
    std::int64_t v = -1;
    REQUIRE(lerw_walker_step(w, &v) == LERW_OK);
    trace.push_back(v);
    std::int32_t cur[3];
    REQUIRE(lerw_walker_position(w, cur) == LERW_OK);
    int moved = 0;
    for (int a = 0; a < 3; ++a) {
      int diff = std::abs(cur[a] - prev[a]);
      if (diff == 7) diff = 1;  // wraparound
      moved += diff;
      CHECK(cur[a] >= 0);
      CHECK(cur[a] < 8);
    }
    CHECK(moved == 1);
    std::memcpy(prev, cur, sizeof cur);
  }
  lerw_walker_destroy(w);

  lerw_walker* w2 = nullptr;
  REQUIRE(lerw_walker_create(8, 3, nullptr, 42, 0, &w2) == LERW_OK);
  for (int k = 0; k < 1000; ++k) {
    std::int64_t v = -1;
    REQUIRE(lerw_walker_step(w2, &v) == LERW_OK);
    CHECK(v == trace[k]);
  }
  lerw_walker_destroy(w2);
}

TEST_CASE("walker creation validates its arguments") {
  lerw_walker* w = nullptr;
  CHECK(lerw_walker_create(1, 3, nullptr, 0, 0, &w) == LERW_EINVAL);
  CHECK(lerw_walker_create(8, 0, nullptr, 0, 0, &w) == LERW_EINVAL);
  CHECK(lerw_walker_create(8, 3, nullptr, 0, 0, nullptr) == LERW_EINVAL);
  std::int32_t bad_start[3] = {0, 9, 0};
  CHECK(lerw_walker_create(8, 3, bad_start, 0, 0, &w) == LERW_EINVAL);
  CHECK(std::strlen(lerw_last_error()) > 0);
  CHECK(lerw_walker_step(nullptr, nullptr) == LERW_EINVAL);
  CHECK(lerw_walker_position(nullptr, nullptr) == LERW_EINVAL);
}

TEST_CASE("eraser produces simple paths under both table choices") {
  for (std::int64_t universe : {std::int64_t{512}, std::int64_t{0}}) {
    lerw_eraser* e = nullptr;
    REQUIRE(lerw_eraser_create(universe, &e) == LERW_OK);
    for (std::int64_t v : {0, 1, 2, 1, 3}) CHECK(lerw_eraser_push(e, v) == LERW_OK);
    CHECK(lerw_eraser_length(e) == 3);
    std::int64_t buf[8];
    std::int64_t written = 0;
    REQUIRE(lerw_eraser_copy_path(e, buf, 8, &written) == LERW_OK);
    REQUIRE(written == 3);
    CHECK(buf[0] == 0);
    CHECK(buf[1] == 1);
    CHECK(buf[2] == 3);
    CHECK(lerw_eraser_copy_path(e, buf, 2, &written) == LERW_EINVAL);
    lerw_eraser_destroy(e);
  }
  lerw_eraser* e = nullptr;
  CHECK(lerw_eraser_create(-1, &e) == LERW_EINVAL);
  CHECK(lerw_eraser_push(nullptr, 0) == LERW_EINVAL);
}

TEST_CASE("walker plus eraser: loop-erased paths are simple") {
  lerw_walker* w = nullptr;
  lerw_eraser* e = nullptr;
  REQUIRE(lerw_walker_create(6, 4, nullptr, 9, 3, &w) == LERW_OK);
  REQUIRE(lerw_eraser_create(6 * 6 * 6 * 6, &e) == LERW_OK);
  REQUIRE(lerw_eraser_push(e, lerw_walker_vertex(w)) == LERW_OK);
  for (int k = 0; k < 20000; ++k) {
    std::int64_t v;
    REQUIRE(lerw_walker_step(w, &v) == LERW_OK);
    REQUIRE(lerw_eraser_push(e, v) == LERW_OK);
  }
  std::int64_t len = lerw_eraser_length(e);
  std::vector<std::int64_t> buf(len);
  std::int64_t written = 0;
  REQUIRE(lerw_eraser_copy_path(e, buf.data(), len, &written) == LERW_OK);
  CHECK(written == len);
  std::set<std::int64_t> uniq(buf.begin(), buf.end());
  CHECK(static_cast<std::int64_t>(uniq.size()) == len);
  lerw_eraser_destroy(e);
  lerw_walker_destroy(w);
}

TEST_CASE("closed-formula pmf and limit cdf helpers") {
  double buf[10];
  std::int64_t written = 0;
  REQUIRE(lerw_complete_graph_pmf(3, buf, 10, &written) == LERW_OK);
  REQUIRE(written == 3);
  CHECK(buf[0] == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(buf[1] == doctest::Approx(4.0 / 9).epsilon(1e-12));
  CHECK(buf[2] == doctest::Approx(2.0 / 9).epsilon(1e-12));
  CHECK(lerw_complete_graph_pmf(3, buf, 2, &written) == LERW_EINVAL);
  CHECK(lerw_complete_graph_pmf(0, buf, 10, &written) == LERW_EINVAL);

  double out = -1;
  REQUIRE(lerw_limit_cdf(0.0, &out) == LERW_OK);
  CHECK(out == 0.0);
  REQUIRE(lerw_limit_cdf(1.0, &out) == LERW_OK);
  CHECK(out == doctest::Approx(1.0 - std::exp(-0.5)).epsilon(1e-12));
  CHECK(lerw_limit_cdf(-1.0, &out) == LERW_EINVAL);
  CHECK(lerw_limit_cdf(1.0, nullptr) == LERW_EINVAL);
}

TEST_CASE("lerw_run maps config and io failures to the status codes") {
  CHECK(lerw_run(nullptr) == LERW_EINVAL);
  CHECK(lerw_run("/no/such/config.cfg") == LERW_EIO);

  auto dir = fs::temp_directory_path() / "lerw-capi-tests";
  fs::create_directories(dir);
  auto bad = dir / "bad.cfg";
  {
    std::ofstream f(bad);
    f << "experiment=complete-graph-law\nn_list=30\nreplicas=0\n";
  }
  CHECK(lerw_run(bad.string().c_str()) == LERW_EINVAL);
  CHECK(std::strlen(lerw_last_error()) > 0);

  auto good = dir / "good.cfg";
  auto out = dir / "good.jsonl";
  fs::remove(out);
  {
    std::ofstream f(good);
    f << "experiment=complete-graph-law\nn_list=20\nreplicas=50\nseed=2\n"
      << "out=" << out.string() << "\n";
  }
  CHECK(lerw_run(good.string().c_str()) == LERW_OK);
  CHECK(fs::exists(out));
  CHECK(lerw_report(out.string().c_str(), 0) == LERW_OK);
  CHECK(lerw_report("/no/such/record.jsonl", 0) == LERW_EIO);
  fs::remove(out);
}
