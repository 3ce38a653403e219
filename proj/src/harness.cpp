#include "lerw/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "lerw/erasure.hpp"
#include "lerw/laplacian.hpp"
#include "lerw/lattice.hpp"
#include "lerw/observables.hpp"
#include "lerw/oracle.hpp"
#include "lerw/parallel.hpp"
#include "lerw/rng.hpp"
#include "lerw/scaling.hpp"
#include "lerw/walker.hpp"

namespace lerw {

using json = nlohmann::json;

namespace {

const char* kRecordFormat = "lerw-record-v1";
const char* kVersion = "0.1.0";

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(trim(tok));
  return out;
}

std::int64_t parse_i64(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    std::int64_t v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::invalid_argument("config: bad integer for " + key + ": '" + s + "'");
  }
}

double parse_f64(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::invalid_argument("config: bad number for " + key + ": '" + s + "'");
  }
}

std::string fmt_f64(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const std::vector<std::string> kExperiments = {
    "lerw-torus-mean", "lerw-torus-tail", "complete-graph-law", "alpha-laplacian",
    "cut-times",       "f-property",      "stopping-times",     "appendix-checks",
    "d4-correction",   "oracle-check"};

std::vector<double> default_lambda_grid() {
  return {0.05, 0.1, 0.2, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
}

}  // namespace

// ------------------------------------------------------------- configuration

ExperimentConfig ExperimentConfig::parse(std::istream& in) {
  ExperimentConfig c;
  std::map<std::string, int> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (seen[key]++)
      throw std::invalid_argument("config: duplicate key '" + key + "'");
    if (key == "experiment") {
      c.experiment = val;
    } else if (key == "d") {
      c.d = static_cast<int>(parse_i64(val, key));
    } else if (key == "n_list") {
      for (auto& t : split_csv(val)) c.n_list.push_back(parse_i64(t, key));
    } else if (key == "alpha_list") {
      for (auto& t : split_csv(val)) c.alpha_list.push_back(parse_f64(t, key));
    } else if (key == "epsilon") {
      c.epsilon = parse_f64(val, key);
    } else if (key == "replicas") {
      c.replicas = static_cast<std::uint64_t>(parse_i64(val, key));
    } else if (key == "seed") {
      c.seed = static_cast<std::uint64_t>(parse_i64(val, key));
    } else if (key == "lambda_grid") {
      for (auto& t : split_csv(val)) c.lambda_grid.push_back(parse_f64(t, key));
    } else if (key == "threads") {
      c.threads = static_cast<int>(parse_i64(val, key));
    } else if (key == "out") {
      c.out = val;
    } else if (key == "c1") {
      c.c1 = parse_f64(val, key);
    } else if (key == "r_list") {
      for (auto& t : split_csv(val)) c.r_list.push_back(parse_i64(t, key));
    } else if (key == "cycles") {
      c.cycles = static_cast<int>(parse_i64(val, key));
    } else if (key == "max_i") {
      c.max_i = static_cast<int>(parse_i64(val, key));
    } else if (key == "starts") {
      c.starts = static_cast<int>(parse_i64(val, key));
    } else if (key.rfind("band_", 0) == 0) {
      c.bands[key] = parse_f64(val, key);
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  return c;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return parse(in);
}

void ExperimentConfig::validate() const {
  if (std::find(kExperiments.begin(), kExperiments.end(), experiment) ==
      kExperiments.end())
    throw std::invalid_argument("config: unknown experiment '" + experiment + "'");
  if (threads < 0) throw std::invalid_argument("config: threads must be >= 0");
  for (auto n : n_list)
    if (n < 2) throw std::invalid_argument("config: n_list entries must be >= 2");
  for (auto r : r_list)
    if (r < 1) throw std::invalid_argument("config: r_list entries must be >= 1");
  for (std::size_t i = 1; i < lambda_grid.size(); ++i)
    if (!(lambda_grid[i] > lambda_grid[i - 1]))
      throw std::invalid_argument("config: lambda_grid must be increasing");
  for (double a : alpha_list)
    if (!(a > 0))
      throw std::invalid_argument("config: alpha_list entries must be positive");

  bool needs_replicas = experiment != "oracle-check";
  if (needs_replicas && replicas < 1)
    throw std::invalid_argument("config: replicas must be >= 1");

  auto need_d = [&](int lo) {
    if (d < lo)
      throw std::invalid_argument("config: experiment " + experiment +
                                  " requires d >= " + std::to_string(lo));
  };
  auto need_n = [&](std::size_t k) {
    if (n_list.size() < k)
      throw std::invalid_argument("config: experiment " + experiment + " requires " +
                                  std::to_string(k) + " n_list entr" +
                                  (k == 1 ? "y" : "ies"));
  };

  if (experiment == "lerw-torus-mean" || experiment == "cut-times") {
    need_d(2);
    need_n(1);
  } else if (experiment == "lerw-torus-tail") {
    need_d(2);
    need_n(1);
    if (n_list.size() != 1)
      throw std::invalid_argument("config: lerw-torus-tail takes a single n");
  } else if (experiment == "complete-graph-law") {
    need_n(1);
    if (n_list.size() != 1)
      throw std::invalid_argument("config: complete-graph-law takes a single n");
  } else if (experiment == "alpha-laplacian") {
    need_n(1);
    if (alpha_list.empty())
      throw std::invalid_argument("config: alpha-laplacian requires alpha_list");
  } else if (experiment == "f-property") {
    need_d(4);
    need_n(1);
    if (r_list.size() != 1)
      throw std::invalid_argument("config: f-property takes a single r");
    if (8 * r_list[0] > n_list[0])
      throw std::invalid_argument("config: f-property requires 8r <= N");
    if (max_i < 1) throw std::invalid_argument("config: max_i must be >= 1");
    if (d == 4 && !(epsilon > 0))
      throw std::invalid_argument("config: d=4 requires epsilon > 0");
  } else if (experiment == "stopping-times") {
    need_d(2);
    need_n(1);
    if (r_list.empty())
      throw std::invalid_argument("config: stopping-times requires r_list");
    for (auto r : r_list)
      if (8 * r > n_list[0])
        throw std::invalid_argument("config: stopping-times requires 8r <= N");
    if (cycles < 1) throw std::invalid_argument("config: cycles must be >= 1");
  } else if (experiment == "appendix-checks") {
    if (starts < 1) throw std::invalid_argument("config: starts must be >= 1");
    if (!(c1 > 0)) throw std::invalid_argument("config: c1 must be positive");
  } else if (experiment == "d4-correction") {
    need_n(1);
  } else if (experiment == "cut-times") {
    if (!(epsilon > 0)) throw std::invalid_argument("config: epsilon must be positive");
  }
  if (experiment == "cut-times" && !(epsilon > 0))
    throw std::invalid_argument("config: epsilon must be positive");
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream os;
  os << "experiment=" << experiment << "\n";
  os << "d=" << d << "\n";
  os << "n_list=";
  for (std::size_t i = 0; i < n_list.size(); ++i) os << (i ? "," : "") << n_list[i];
  os << "\n";
  os << "alpha_list=";
  for (std::size_t i = 0; i < alpha_list.size(); ++i)
    os << (i ? "," : "") << fmt_f64(alpha_list[i]);
  os << "\n";
  os << "epsilon=" << fmt_f64(epsilon) << "\n";
  os << "replicas=" << replicas << "\n";
  os << "seed=" << seed << "\n";
  os << "lambda_grid=";
  for (std::size_t i = 0; i < lambda_grid.size(); ++i)
    os << (i ? "," : "") << fmt_f64(lambda_grid[i]);
  os << "\n";
  os << "c1=" << fmt_f64(c1) << "\n";
  os << "r_list=";
  for (std::size_t i = 0; i < r_list.size(); ++i) os << (i ? "," : "") << r_list[i];
  os << "\n";
  os << "cycles=" << cycles << "\n";
  os << "max_i=" << max_i << "\n";
  os << "starts=" << starts << "\n";
  for (auto& [k, v] : bands) os << k << "=" << fmt_f64(v) << "\n";
  // threads and out are execution details, not part of the experiment identity
  return os.str();
}

std::uint64_t ExperimentConfig::config_hash() const {
  // FNV-1a over the canonical form
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : canonical()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

int ExperimentConfig::effective_threads() const {
  if (threads > 0) return threads;
  if (const char* env = std::getenv("LERW_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return static_cast<int>(v);
  }
  return 1;
}

// ------------------------------------------------------------- replica plans

namespace {

struct Plan {
  std::uint64_t units = 0;
  std::function<json(std::uint64_t)> replica;
  std::function<json(const std::vector<json>&)> summarize;
};

// One torus LERW sample: walk from the origin to a uniformly random other
// vertex, erasing online.
json torus_len_unit(const ExperimentConfig& c, int d, std::int64_t N,
                    std::uint64_t g) {
  TorusParams t(N, d);
  Rng rng(SeedSpec{c.seed, g});
  std::int64_t e =
      1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(t.volume) - 1));
  TorusWalk walk(t, decode(0, t), rng);
  OnlineLoopEraser<DensePosMap> er{t.volume};
  auto res = walk_until_hit(walk, 0, e, default_hit_cap(t),
                            [&](std::int64_t v) { er.push(v); });
  return json{{"i", g},
              {"n", N},
              {"le_len", er.size()},
              {"walk_len", res.length},
              {"truncated", res.truncated}};
}

struct PerN {
  std::int64_t n = 0;
  std::vector<double> lens;
  std::uint64_t truncated = 0;
};

std::vector<PerN> group_lengths(const ExperimentConfig& c,
                                const std::vector<json>& reps) {
  std::vector<PerN> out;
  for (auto n : c.n_list) out.push_back({n, {}, 0});
  for (auto& r : reps) {
    std::size_t which = r.at("i").get<std::uint64_t>() / c.replicas;
    if (r.at("truncated").get<bool>()) {
      ++out[which].truncated;
    } else {
      out[which].lens.push_back(r.at("le_len").get<double>());
    }
  }
  return out;
}

json per_n_stats(const std::vector<PerN>& groups) {
  json arr = json::array();
  for (auto& g : groups) {
    double mean = 0, sd = 0;
    for (double x : g.lens) mean += x;
    if (!g.lens.empty()) mean /= static_cast<double>(g.lens.size());
    for (double x : g.lens) sd += (x - mean) * (x - mean);
    sd = g.lens.size() > 1 ? std::sqrt(sd / (g.lens.size() - 1)) : 0.0;
    double se = g.lens.empty() ? 0.0 : sd / std::sqrt(static_cast<double>(g.lens.size()));
    arr.push_back({{"n", g.n},
                   {"count", g.lens.size()},
                   {"truncated", g.truncated},
                   {"mean", mean},
                   {"sd", sd},
                   {"se", se}});
  }
  return arr;
}

json fit_json(const ExponentFit& f) {
  return {{"slope", f.slope},
          {"intercept", f.intercept},
          {"stderr", f.slope_stderr},
          {"r2", f.r2},
          {"points", f.points}};
}

json survival_json(const SurvivalCurve& s) {
  json arr = json::array();
  for (std::size_t i = 0; i < s.lambdas.size(); ++i)
    arr.push_back({{"lambda", s.lambdas[i]},
                   {"estimate", s.estimates[i]},
                   {"lo", s.intervals[i].lo},
                   {"hi", s.intervals[i].hi}});
  return {{"scale", s.scale}, {"sample_size", s.sample_size}, {"points", arr}};
}

// Least-squares line on (lambda, log S) over strictly positive estimates.
json tail_fit_json(const SurvivalCurve& s, double lambda_min) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < s.lambdas.size(); ++i)
    if (s.lambdas[i] >= lambda_min && s.estimates[i] > 0)
      pts.emplace_back(s.lambdas[i], std::log(s.estimates[i]));
  if (pts.size() < 2) return {{"ok", false}};
  auto f = linear_fit(pts);
  json j = fit_json(f);
  j["ok"] = true;
  return j;
}

Plan plan_torus_mean(const ExperimentConfig& c) {
  Plan p;
  p.units = c.n_list.size() * c.replicas;
  p.replica = [c](std::uint64_t g) {
    return torus_len_unit(c, c.d, c.n_list[g / c.replicas], g);
  };
  p.summarize = [c](const std::vector<json>& reps) {
    auto groups = group_lengths(c, reps);
    json s;
    s["per_n"] = per_n_stats(groups);
    json pts = json::array();
    std::vector<std::pair<double, double>> fit_pts;
    for (auto& g : groups)
      if (!g.lens.empty()) {
        double mean = 0;
        for (double x : g.lens) mean += x;
        mean /= static_cast<double>(g.lens.size());
        fit_pts.emplace_back(static_cast<double>(g.n), mean);
        pts.push_back({static_cast<double>(g.n), mean});
      }
    s["fit_points"] = pts;
    if (fit_pts.size() >= 2) s["fit"] = fit_json(exponent_fit(fit_pts));
    if (!c.bands.empty() && s.contains("fit")) {
      double slope = s["fit"]["slope"].get<double>();
      bool ok = true;
      if (auto it = c.bands.find("band_slope_lo"); it != c.bands.end())
        ok = ok && slope >= it->second;
      if (auto it = c.bands.find("band_slope_hi"); it != c.bands.end())
        ok = ok && slope <= it->second;
      if (auto it = c.bands.find("band_r2"); it != c.bands.end())
        ok = ok && s["fit"]["r2"].get<double>() >= it->second;
      s["bands_ok"] = ok;
    }
    return s;
  };
  return p;
}

Plan plan_torus_tail(const ExperimentConfig& c) {
  Plan p;
  p.units = c.replicas;
  p.replica = [c](std::uint64_t g) { return torus_len_unit(c, c.d, c.n_list[0], g); };
  p.summarize = [c](const std::vector<json>& reps) {
    std::vector<double> lens;
    std::uint64_t truncated = 0;
    for (auto& r : reps) {
      if (r.at("truncated").get<bool>())
        ++truncated;
      else
        lens.push_back(r.at("le_len").get<double>());
    }
    double scale = std::pow(static_cast<double>(c.n_list[0]), c.d / 2.0);
    auto grid = c.lambda_grid.empty() ? default_lambda_grid() : c.lambda_grid;
    auto curve = survival(lens, scale, grid);
    // upper tail measured against the sample median, where the exponential
    // bound is scale-free
    std::vector<double> sorted = lens;
    std::sort(sorted.begin(), sorted.end());
    double median = sorted[sorted.size() / 2];
    std::vector<double> med_grid;
    for (double lam = 1.0; lam <= 4.0 + 1e-9; lam += 0.25) med_grid.push_back(lam);
    auto med_curve = survival(lens, median, med_grid);
    json s;
    s["n"] = c.n_list[0];
    s["scale"] = scale;
    s["median"] = median;
    s["truncated"] = truncated;
    s["survival"] = survival_json(curve);
    s["survival_median"] = survival_json(med_curve);
    s["upper_tail_fit"] = tail_fit_json(med_curve, 1.0);
    // small-lambda side: P(len <= lambda N^{d/2}) against C lambda log(1/lambda)
    json lower = json::array();
    for (std::size_t i = 0; i < curve.lambdas.size(); ++i) {
      double lam = curve.lambdas[i];
      if (lam >= 0.5) continue;
      double phat = 1.0 - curve.estimates[i];
      lower.push_back({{"lambda", lam},
                       {"estimate", phat},
                       {"shape", lam * std::log(1.0 / lam)}});
    }
    s["lower_tail"] = lower;
    return s;
  };
  return p;
}

Plan plan_complete_graph(const ExperimentConfig& c) {
  const std::int64_t N = c.n_list[0];
  Plan p;
  p.units = c.replicas;
  p.replica = [c, N](std::uint64_t g) {
    Rng rng(SeedSpec{c.seed, g});
    std::int64_t e = 1 + static_cast<std::int64_t>(rng.below(N - 1));
    CompleteGraphWalk walk(N, 0, rng);
    OnlineLoopEraser<HashPosMap> er;
    auto res = walk_until_hit(walk, 0, e, 1000000ull * N,
                              [&](std::int64_t v) { er.push(v); });
    if (res.truncated) throw std::runtime_error("complete-graph walk cap hit");
    return json{{"i", g}, {"len", er.size()}};
  };
  p.summarize = [c, N](const std::vector<json>& reps) {
    std::vector<double> lens;
    std::map<std::int64_t, double> emp_shifted;
    for (auto& r : reps) {
      auto L = r.at("len").get<std::int64_t>();
      lens.push_back(static_cast<double>(L));
      emp_shifted[L + 1] += 1.0;
    }
    double M = static_cast<double>(lens.size());
    for (auto& [k, v] : emp_shifted) v /= M;
    auto pmf = complete_graph_pmf(N);
    std::map<std::int64_t, double> model;
    for (std::size_t j = 0; j < pmf.size(); ++j)
      model[static_cast<std::int64_t>(j) + 2] = pmf[j];
    double tv = tv_distance(emp_shifted, model);
    // expected plug-in inflation: E|phat - p| ~ sqrt(2 p (1-p) / (pi M))
    double bias = 0;
    for (auto& [k, v] : model)
      bias += 0.5 * std::sqrt(2.0 * v * (1.0 - v) / (M_PI * M));
    // unshifted comparison against the exact finite-N law, for reference
    std::map<std::int64_t, double> emp;
    for (double L : lens) emp[static_cast<std::int64_t>(L)] += 1.0 / M;
    auto exact = lerw_length_pmf_exact(N);
    std::map<std::int64_t, double> exact_map;
    for (std::size_t j = 0; j < exact.size(); ++j)
      exact_map[static_cast<std::int64_t>(j) + 2] = exact[j];
    double tv_exact = tv_distance(emp, exact_map);
    std::vector<double> norm;
    double root = std::sqrt(static_cast<double>(N));
    for (double L : lens) norm.push_back(L / root);
    double ks = ks_distance(norm, [](double x) {
      return x < 0 ? 0.0 : complete_graph_limit_cdf(x);
    });
    json s;
    s["n"] = N;
    s["samples"] = lens.size();
    s["tv_vs_formula_shifted"] = tv;
    s["tv_plugin_bias_estimate"] = bias;
    s["tv_vs_exact_law"] = tv_exact;
    s["ks_vs_limit"] = ks;
    return s;
  };
  return p;
}

Plan plan_alpha(const ExperimentConfig& c) {
  const std::uint64_t per_alpha = c.n_list.size() * c.replicas;
  Plan p;
  p.units = c.alpha_list.size() * per_alpha;
  p.replica = [c, per_alpha](std::uint64_t g) {
    double alpha = c.alpha_list[g / per_alpha];
    std::uint64_t rest = g % per_alpha;
    std::int64_t N = c.n_list[rest / c.replicas];
    Rng rng(SeedSpec{c.seed, g});
    std::int64_t len = complete_graph_alpha_length(N, AlphaParam(alpha), rng);
    return json{{"i", g}, {"alpha", alpha}, {"n", N}, {"len", len}};
  };
  p.summarize = [c, per_alpha](const std::vector<json>& reps) {
    json per_alpha_out = json::array();
    bool all_ok = true;
    double tol = 0.05;
    if (auto it = c.bands.find("band_alpha_tol"); it != c.bands.end())
      tol = it->second;
    for (std::size_t a = 0; a < c.alpha_list.size(); ++a) {
      std::vector<double> sums(c.n_list.size(), 0.0);
      std::vector<std::uint64_t> counts(c.n_list.size(), 0);
      for (auto& r : reps) {
        std::uint64_t g = r.at("i").get<std::uint64_t>();
        if (g / per_alpha != a) continue;
        std::size_t which = (g % per_alpha) / c.replicas;
        sums[which] += r.at("len").get<double>();
        ++counts[which];
      }
      std::vector<std::pair<double, double>> pts;
      for (std::size_t j = 0; j < c.n_list.size(); ++j)
        if (counts[j] > 0)
          pts.emplace_back(static_cast<double>(c.n_list[j]), sums[j] / counts[j]);
      json entry;
      entry["alpha"] = c.alpha_list[a];
      entry["target"] = 1.0 / (1.0 + c.alpha_list[a]);
      entry["points"] = pts;
      if (pts.size() >= 2) {
        auto f = exponent_fit(pts);
        entry["fit"] = fit_json(f);
        bool ok = std::abs(f.slope - entry["target"].get<double>()) <= tol;
        entry["within"] = ok;
        all_ok = all_ok && ok;
      }
      per_alpha_out.push_back(entry);
    }
    return json{{"per_alpha", per_alpha_out}, {"tolerance", tol}, {"all_within", all_ok}};
  };
  return p;
}

Plan plan_cut_times(const ExperimentConfig& c) {
  Plan p;
  p.units = c.n_list.size() * c.replicas;
  p.replica = [c](std::uint64_t g) {
    std::int64_t N = c.n_list[g / c.replicas];
    TorusParams t(N, c.d);
    std::uint64_t L = std::max<std::uint64_t>(
        2, static_cast<std::uint64_t>(c.epsilon *
                                      std::pow(static_cast<double>(N), c.d / 2.0)));
    Rng rng(SeedSpec{c.seed, g});
    TorusWalk walk(t, decode(0, t), rng);
    std::vector<std::int64_t> traj;
    traj.reserve(L + 1);
    walk_fixed_length(walk, 0, L, [&](std::int64_t v) { traj.push_back(v); });
    auto rep = cut_times(traj, 0);
    return json{{"i", g}, {"n", N}, {"L", L}, {"cuts", rep.count}};
  };
  p.summarize = [c](const std::vector<json>& reps) {
    json per_n = json::array();
    for (std::size_t w = 0; w < c.n_list.size(); ++w) {
      std::vector<double> xs;
      std::uint64_t L = 0;
      for (auto& r : reps) {
        if (r.at("i").get<std::uint64_t>() / c.replicas != w) continue;
        xs.push_back(r.at("cuts").get<double>());
        L = r.at("L").get<std::uint64_t>();
      }
      double mean = 0, var = 0;
      for (double x : xs) mean += x;
      mean /= static_cast<double>(xs.size());
      for (double x : xs) var += (x - mean) * (x - mean);
      var = xs.size() > 1 ? var / (xs.size() - 1) : 0.0;
      double Ld = static_cast<double>(L);
      per_n.push_back({{"n", c.n_list[w]},
                       {"L", L},
                       {"count", xs.size()},
                       {"mean_cuts", mean},
                       {"mean_per_step", mean / Ld},
                       {"se_per_step", std::sqrt(var / xs.size()) / Ld},
                       {"var_ratio", var / (Ld * Ld)}});
    }
    return json{{"epsilon", c.epsilon}, {"per_n", per_n}};
  };
  return p;
}

Plan plan_f_property(const ExperimentConfig& c) {
  Plan p;
  p.units = c.replicas;
  p.replica = [c](std::uint64_t g) {
    TorusParams t(c.n_list[0], c.d);
    auto counts = f_property_replica(t, TorusPoint{}, c.r_list[0], c.max_i,
                                     SeedSpec{c.seed, g});
    return json{{"i", g}, {"counts", counts}};
  };
  p.summarize = [c](const std::vector<json>& reps) {
    std::vector<std::vector<double>> per_rep;
    for (auto& r : reps) per_rep.push_back(r.at("counts").get<std::vector<double>>());
    auto grid = c.lambda_grid.empty() ? default_lambda_grid() : c.lambda_grid;
    auto survey =
        f_property_aggregate(per_rep, c.d, c.r_list[0], c.max_i, grid, c.epsilon);
    json cells = json::array();
    for (auto& cell : survey.cells)
      cells.push_back({{"i", cell.i},
                       {"lambda", cell.lambda},
                       {"estimate", cell.estimate},
                       {"lo", cell.interval.lo},
                       {"hi", cell.interval.hi},
                       {"samples", cell.samples},
                       {"flagged", cell.flagged}});
    // exponential-shape fit at the deepest stopping index
    std::vector<std::pair<double, double>> pts;
    for (auto& cell : survey.cells)
      if (cell.i == survey.max_i && !cell.flagged && cell.estimate > 0)
        pts.emplace_back(cell.lambda, std::log(cell.estimate));
    json s;
    s["scale"] = survey.scale;
    s["max_i"] = survey.max_i;
    s["cells"] = cells;
    if (pts.size() >= 2) s["tail_fit"] = fit_json(linear_fit(pts));
    return s;
  };
  return p;
}

Plan plan_stopping(const ExperimentConfig& c) {
  Plan p;
  p.units = c.r_list.size() * c.replicas;
  p.replica = [c](std::uint64_t g) {
    std::int64_t r = c.r_list[g / c.replicas];
    TorusParams t(c.n_list[0], c.d);
    auto times =
        stopping_time_replica(t, TorusPoint{}, r, c.cycles, SeedSpec{c.seed, g});
    return json{{"i", g}, {"r", r}, {"times", times}};
  };
  p.summarize = [c](const std::vector<json>& reps) {
    auto grid = c.lambda_grid.empty() ? default_lambda_grid() : c.lambda_grid;
    TorusParams t(c.n_list[0], c.d);
    json per_r = json::array();
    std::vector<double> e_hats;
    for (std::size_t w = 0; w < c.r_list.size(); ++w) {
      std::vector<std::vector<std::uint64_t>> tapes;
      for (auto& r : reps)
        if (r.at("i").get<std::uint64_t>() / c.replicas == w)
          tapes.push_back(r.at("times").get<std::vector<std::uint64_t>>());
      auto est = stopping_time_aggregate(tapes, c.r_list[w], c.cycles, grid);
      e_hats.push_back(est.e_hat);
      double predicted = static_cast<double>(t.volume) *
                         std::pow(static_cast<double>(c.r_list[w]), 2.0 - c.d);
      per_r.push_back({{"r", est.radius},
                       {"cycles", est.cycles},
                       {"e_hat", est.e_hat},
                       {"e_halfwidth", est.e_halfwidth},
                       {"sigma_hat", est.sigma_hat},
                       {"replicas_used", est.replicas_used},
                       {"excluded", est.excluded},
                       {"predicted_scale", predicted},
                       {"e_over_predicted", est.e_hat / predicted},
                       {"tail", survival_json(est.tail)},
                       {"tail_fit", tail_fit_json(est.tail, 0.0)}});
    }
    json ratios = json::array();
    for (std::size_t w = 0; w + 1 < c.r_list.size(); ++w) {
      double pred = std::pow(static_cast<double>(c.r_list[w + 1]) /
                                 static_cast<double>(c.r_list[w]),
                             2.0 - c.d);
      ratios.push_back({{"r1", c.r_list[w]},
                        {"r2", c.r_list[w + 1]},
                        {"ratio", e_hats[w + 1] / e_hats[w]},
                        {"predicted", pred}});
    }
    return json{{"per_r", per_r}, {"ratios", ratios}};
  };
  return p;
}

Plan plan_appendix(const ExperimentConfig& c) {
  // exit-point part on T_N^4, ball-hitting part on a small T^5 torus
  const std::int64_t exit_n = c.n_list.empty() ? 32 : c.n_list[0];
  const std::int64_t hit_n = c.n_list.size() > 1 ? c.n_list[1] : 12;
  const std::vector<std::int64_t> exit_r =
      c.r_list.empty() ? std::vector<std::int64_t>{6, 12} : c.r_list;
  const std::uint64_t batch = 10000;
  const std::uint64_t batches_per_r = (c.replicas + batch - 1) / batch;
  const std::uint64_t hit_trials = 400;

  Plan p;
  p.units = exit_r.size() * batches_per_r + static_cast<std::uint64_t>(c.starts);
  p.replica = [=](std::uint64_t g) {
    if (g < exit_r.size() * batches_per_r) {
      std::int64_t r = exit_r[g / batches_per_r];
      std::uint64_t b = g % batches_per_r;
      std::uint64_t trials = std::min(batch, c.replicas - b * batch);
      TorusParams t(exit_n, 4);
      TorusPoint origin{};
      Ball ball(origin, r, 1, t);
      TorusPoint w = TorusPoint::of({static_cast<std::int32_t>(r), 0, 0, 0});
      std::int64_t w_idx = encode(w, t);
      Rng rng(SeedSpec{c.seed, g});
      std::uint64_t hits = 0;
      for (std::uint64_t k = 0; k < trials; ++k) {
        TorusWalk walk(t, origin, rng.fork());
        std::int64_t last_inside = walk.index();
        for (;;) {
          walk.step();
          if (!ball.contains2(torus_distance2(walk.position(), origin, t))) break;
          last_inside = walk.index();
        }
        if (last_inside == w_idx) ++hits;
      }
      return json{{"i", g}, {"phase", "exit"}, {"r", r}, {"hits", hits},
                  {"trials", trials}};
    }
    // ball-hitting phase: does a walk of length c1 N^d r^{2-d} hit B(0,2)?
    std::uint64_t s = g - exit_r.size() * batches_per_r;
    TorusParams t(hit_n, 5);
    const std::int64_t r = 2;
    TorusPoint origin{};
    Ball ball(origin, r, 1, t);
    std::uint64_t walk_len = static_cast<std::uint64_t>(
        c.c1 * static_cast<double>(t.volume) *
        std::pow(static_cast<double>(r), 2.0 - t.dim));
    Rng rng(SeedSpec{c.seed, g});
    std::int64_t start_idx =
        static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(t.volume)));
    TorusPoint start = decode(start_idx, t);
    std::uint64_t hits = 0;
    for (std::uint64_t k = 0; k < hit_trials; ++k) {
      TorusWalk walk(t, start, rng.fork());
      bool hit = ball.contains(start);
      for (std::uint64_t step = 0; !hit && step < walk_len; ++step) {
        walk.step();
        hit = ball.contains2(torus_distance2(walk.position(), origin, t));
      }
      hits += hit ? 1 : 0;
    }
    return json{{"i", g},       {"phase", "hit"},    {"start", start_idx},
                {"hits", hits}, {"trials", hit_trials}, {"walk_length", walk_len}};
  };
  p.summarize = [=](const std::vector<json>& reps) {
    json exit = json::array();
    std::vector<double> phats;
    for (std::size_t w = 0; w < exit_r.size(); ++w) {
      std::uint64_t hits = 0, trials = 0;
      for (auto& r : reps) {
        if (r.at("phase") != "exit") continue;
        std::uint64_t g = r.at("i").get<std::uint64_t>();
        if (g / batches_per_r != w) continue;
        hits += r.at("hits").get<std::uint64_t>();
        trials += r.at("trials").get<std::uint64_t>();
      }
      double phat = trials ? static_cast<double>(hits) / trials : 0.0;
      phats.push_back(phat);
      auto iv = wilson_interval(hits, trials);
      exit.push_back({{"r", exit_r[w]},
                      {"trials", trials},
                      {"p_hat", phat},
                      {"lo", iv.lo},
                      {"hi", iv.hi},
                      {"predicted", std::pow(static_cast<double>(exit_r[w]), -3.0)}});
    }
    json s;
    s["exit"] = exit;
    if (phats.size() >= 2 && phats[1] > 0) {
      s["exit_ratio"] = phats[0] / phats[1];
      s["exit_ratio_predicted"] =
          std::pow(static_cast<double>(exit_r[1]) / exit_r[0], 3.0);
    }
    json per_start = json::array();
    double min_est = 1.0;
    std::uint64_t walk_len = 0;
    for (auto& r : reps) {
      if (r.at("phase") != "hit") continue;
      auto hits = r.at("hits").get<std::uint64_t>();
      auto trials = r.at("trials").get<std::uint64_t>();
      double phat = static_cast<double>(hits) / trials;
      auto iv = wilson_interval(hits, trials);
      min_est = std::min(min_est, phat);
      walk_len = r.at("walk_length").get<std::uint64_t>();
      per_start.push_back({{"start", r.at("start")},
                           {"p_hat", phat},
                           {"lo", iv.lo},
                           {"hi", iv.hi}});
    }
    s["ball_hit"] = {{"walk_length", walk_len},
                     {"min_estimate", min_est},
                     {"per_start", per_start}};
    return s;
  };
  return p;
}

Plan plan_d4(const ExperimentConfig& c) {
  Plan p;
  p.units = c.n_list.size() * c.replicas;
  p.replica = [c](std::uint64_t g) {
    return torus_len_unit(c, 4, c.n_list[g / c.replicas], g);
  };
  p.summarize = [c](const std::vector<json>& reps) {
    auto groups = group_lengths(c, reps);
    json s;
    s["per_n"] = per_n_stats(groups);
    // exploratory: mean / N^2 against log N (the conjectured correction)
    json corr = json::array();
    std::vector<std::pair<double, double>> pts;
    for (auto& g : groups) {
      if (g.lens.empty()) continue;
      double mean = 0;
      for (double x : g.lens) mean += x;
      mean /= static_cast<double>(g.lens.size());
      double n2 = static_cast<double>(g.n) * g.n;
      corr.push_back({{"n", g.n}, {"mean_over_n2", mean / n2}});
      pts.emplace_back(std::log(std::log(static_cast<double>(g.n))),
                       std::log(mean / n2));
    }
    s["correction"] = corr;
    if (pts.size() >= 2) s["loglog_fit"] = fit_json(linear_fit(pts));
    return s;
  };
  return p;
}

Plan plan_oracle(const ExperimentConfig&) {
  Plan p;
  p.units = 0;
  p.replica = [](std::uint64_t) { return json(); };
  p.summarize = [](const std::vector<json>&) {
    std::ostringstream os;
    int rc = oracle_check(os);
    return json{{"ok", rc == 0}, {"log", os.str()}};
  };
  return p;
}

Plan make_plan(const ExperimentConfig& c) {
  if (c.experiment == "lerw-torus-mean") return plan_torus_mean(c);
  if (c.experiment == "lerw-torus-tail") return plan_torus_tail(c);
  if (c.experiment == "complete-graph-law") return plan_complete_graph(c);
  if (c.experiment == "alpha-laplacian") return plan_alpha(c);
  if (c.experiment == "cut-times") return plan_cut_times(c);
  if (c.experiment == "f-property") return plan_f_property(c);
  if (c.experiment == "stopping-times") return plan_stopping(c);
  if (c.experiment == "appendix-checks") return plan_appendix(c);
  if (c.experiment == "d4-correction") return plan_d4(c);
  if (c.experiment == "oracle-check") return plan_oracle(c);
  throw std::invalid_argument("unknown experiment: " + c.experiment);
}

std::string hash_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string csv_path_for(const std::string& out) {
  std::filesystem::path p(out);
  p.replace_extension(".csv");
  if (p.string() == out) return out + ".csv";
  return p.string();
}

void flatten_scalars(const json& j, const std::string& prefix,
                     std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto& [k, v] : j.items())
      flatten_scalars(v, prefix.empty() ? k : prefix + "." + k, rows);
  } else if (j.is_number() || j.is_boolean() || j.is_string()) {
    rows.emplace_back(prefix, j.dump());
  }
  // arrays of per-cell records stay in the JSON record
}

}  // namespace

// ---------------------------------------------------------------- execution

RunRecord run_experiment(const ExperimentConfig& config) {
  config.validate();
  Plan plan = make_plan(config);
  const std::string hash = hash_hex(config.config_hash());

  RunRecord rec;
  bool resuming = false;
  if (!config.out.empty() && std::filesystem::exists(config.out)) {
    std::ifstream in(config.out);
    std::string line;
    if (std::getline(in, line)) {
      json header = json::parse(line, nullptr, false);
      if (!header.is_discarded() && header.value("config_hash", "") == hash) {
        resuming = true;
        rec.header = header;
        std::uint64_t expect = 0;
        while (std::getline(in, line)) {
          json j = json::parse(line, nullptr, false);
          if (j.is_discarded() || !j.is_object()) break;
          if (!j.contains("i")) break;  // summary or foreign line: stop
          if (j.at("i").get<std::uint64_t>() != expect) break;
          rec.replicas.push_back(std::move(j));
          ++expect;
        }
      }
    }
  }
  if (!resuming) {
    rec.header = json{{"format", kRecordFormat},
                      {"version", kVersion},
                      {"experiment", config.experiment},
                      {"rng", std::string(kRngAlgorithm)},
                      {"config_hash", hash},
                      {"config", config.canonical()},
                      {"units", plan.units}};
    rec.replicas.clear();
  }

  const std::uint64_t have = rec.replicas.size();
  const int threads = config.effective_threads();

  std::ofstream out;
  std::string tmp;
  if (!config.out.empty()) {
    tmp = config.out + ".tmp";
    out.open(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write record: " + tmp);
    out << rec.header.dump() << "\n";
    for (auto& r : rec.replicas) out << r.dump() << "\n";
    out.flush();
  }

  // compute remaining units in deterministic order, flushing each batch so an
  // interrupted run resumes where it stopped
  const std::uint64_t batch = threads > 1 ? 16ull * threads : 64;
  for (std::uint64_t base = have; base < plan.units; base += batch) {
    std::uint64_t n = std::min<std::uint64_t>(batch, plan.units - base);
    auto chunk =
        run_indexed(n, threads, [&](std::uint64_t k) { return plan.replica(base + k); });
    for (auto& j : chunk) {
      if (out.is_open()) out << j.dump() << "\n";
      rec.replicas.push_back(std::move(j));
    }
    if (out.is_open()) out.flush();
  }

  rec.summary = plan.summarize(rec.replicas);
  rec.summary["experiment"] = config.experiment;

  if (out.is_open()) {
    out << rec.summary.dump() << "\n";
    out.close();
    std::filesystem::rename(tmp, config.out);
    std::ofstream csv(csv_path_for(config.out), std::ios::trunc);
    if (csv) {
      csv << "key,value\n";
      std::vector<std::pair<std::string, std::string>> rows;
      flatten_scalars(rec.summary, "", rows);
      for (auto& [k, v] : rows) csv << k << "," << v << "\n";
    }
  }
  return rec;
}

RunRecord load_record(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open record: " + path);
  RunRecord rec;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty record: " + path);
  rec.header = json::parse(line);
  std::vector<json> rest;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    rest.push_back(json::parse(line));
  }
  if (rest.empty()) throw std::runtime_error("record has no summary: " + path);
  rec.summary = rest.back();
  rest.pop_back();
  rec.replicas = std::move(rest);
  return rec;
}

// ------------------------------------------------------------------ reports

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<std::pair<double, double>>& points,
                    bool log_y) {
  const int W = 640, H = 420, ML = 70, MR = 20, MT = 40, MB = 50;
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write svg: " + path);
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  std::vector<std::pair<double, double>> pts;
  for (auto [x, y] : points) {
    double yy = log_y ? (y > 0 ? std::log10(y) : NAN) : y;
    if (std::isnan(yy)) continue;
    pts.emplace_back(x, yy);
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, yy);
    ymax = std::max(ymax, yy);
  }
  if (pts.empty()) {
    xmin = 0; xmax = 1; ymin = 0; ymax = 1;
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  auto X = [&](double x) { return ML + (x - xmin) / (xmax - xmin) * (W - ML - MR); };
  auto Y = [&](double y) {
    return H - MB - (y - ymin) / (ymax - ymin) * (H - MT - MB);
  };
  f << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
    << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
  f << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='16'>"
    << title << "</text>\n";
  f << "<line x1='" << ML << "' y1='" << H - MB << "' x2='" << W - MR << "' y2='"
    << H - MB << "' stroke='black'/>\n";
  f << "<line x1='" << ML << "' y1='" << MT << "' x2='" << ML << "' y2='" << H - MB
    << "' stroke='black'/>\n";
  f << "<text x='" << ML << "' y='" << H - MB + 20 << "' font-size='12'>" << xmin
    << "</text>\n<text x='" << W - MR << "' y='" << H - MB + 20
    << "' text-anchor='end' font-size='12'>" << xmax << "</text>\n";
  f << "<text x='" << ML - 8 << "' y='" << H - MB << "' text-anchor='end' font-size='12'>"
    << (log_y ? "1e" + std::to_string(static_cast<int>(std::floor(ymin))) : std::to_string(ymin))
    << "</text>\n";
  f << "<text x='" << ML - 8 << "' y='" << MT + 12
    << "' text-anchor='end' font-size='12'>"
    << (log_y ? "1e" + std::to_string(static_cast<int>(std::ceil(ymax))) : std::to_string(ymax))
    << "</text>\n";
  if (!pts.empty()) {
    f << "<polyline fill='none' stroke='steelblue' stroke-width='1.5' points='";
    for (auto [x, y] : pts) f << X(x) << "," << Y(y) << " ";
    f << "'/>\n";
    for (auto [x, y] : pts)
      f << "<circle cx='" << X(x) << "' cy='" << Y(y) << "' r='3' fill='steelblue'/>\n";
  }
  f << "</svg>\n";
}

namespace {

void collect_plots(const json& summary, const std::string& prefix,
                   std::vector<std::tuple<std::string, std::vector<std::pair<double, double>>, bool>>& plots) {
  if (!summary.is_object()) return;
  for (auto& [k, v] : summary.items()) {
    std::string name = prefix.empty() ? k : prefix + "." + k;
    if (v.is_array() && k == "fit_points") {
      std::vector<std::pair<double, double>> pts;
      for (auto& p : v)
        if (p.is_array() && p.size() == 2)
          pts.emplace_back(p[0].get<double>(), p[1].get<double>());
      if (pts.size() >= 2) plots.emplace_back(name, pts, true);
    } else if (v.is_object() && v.contains("points") && v.contains("scale")) {
      // survival table
      std::vector<std::pair<double, double>> pts;
      for (auto& p : v["points"])
        if (p.value("estimate", 0.0) > 0)
          pts.emplace_back(p["lambda"].get<double>(), p["estimate"].get<double>());
      if (pts.size() >= 2) plots.emplace_back(name, pts, true);
    } else if (v.is_object()) {
      collect_plots(v, name, plots);
    } else if (v.is_array()) {
      for (std::size_t i = 0; i < v.size(); ++i)
        collect_plots(v[i], name + "[" + std::to_string(i) + "]", plots);
    }
  }
}

}  // namespace

int report_record(const std::string& path, bool svg, std::ostream& os) {
  RunRecord rec;
  try {
    rec = load_record(path);
  } catch (const std::exception& e) {
    os << "error: " << e.what() << "\n";
    return 2;
  }
  if (!rec.header.contains("experiment") || !rec.summary.is_object()) {
    os << "error: not a run record: " << path << "\n";
    return 1;
  }
  os << "experiment: " << rec.header.value("experiment", "?") << "\n";
  os << "config hash: " << rec.header.value("config_hash", "?") << "\n";
  os << "rng: " << rec.header.value("rng", "?") << "\n";
  os << "replica records: " << rec.replicas.size() << "\n";
  os << "summary:\n" << rec.summary.dump(2) << "\n";
  if (svg) {
    std::vector<std::tuple<std::string, std::vector<std::pair<double, double>>, bool>>
        plots;
    collect_plots(rec.summary, "", plots);
    for (auto& [name, pts, log_y] : plots) {
      std::string safe = name;
      for (auto& ch : safe)
        if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
      std::string out = path + "." + safe + ".svg";
      try {
        write_svg_plot(out, name, pts, log_y);
        os << "wrote " << out << "\n";
      } catch (const std::exception& e) {
        os << "error: " << e.what() << "\n";
        return 2;
      }
    }
  }
  return 0;
}

// --------------------------------------------------------------- oracle check

int oracle_check(std::ostream& os) {
  int failures = 0;
  auto check = [&](const std::string& name, bool ok, double value, double bound) {
    os << (ok ? "ok   " : "FAIL ") << name << "  (" << value << " vs bound " << bound
       << ")\n";
    if (!ok) ++failures;
  };

  const std::uint64_t mc_samples = 1000000;
  struct Case {
    const char* name;
    FiniteGraph g;
    int b, e;
  };
  std::vector<Case> cases;
  cases.push_back({"C5 0->2", FiniteGraph::cycle(5), 0, 2});
  cases.push_back({"K4 0->3", FiniteGraph::complete(4), 0, 3});

  for (auto& cs : cases) {
    auto exact = exact_lerw_distribution(cs.g, cs.b, cs.e);
    auto mc = mc_lerw_distribution(cs.g, cs.b, cs.e, mc_samples, SeedSpec{1234, 0});
    double tv1 = tv_distance(exact.probs, mc.probs);
    check(std::string(cs.name) + " exact vs walk MC", tv1 < 0.01, tv1, 0.01);

    // third route: alpha=1 Laplacian-walk sampler
    std::map<std::vector<int>, double> lap;
    Rng rng(SeedSpec{5678, 0});
    for (std::uint64_t s = 0; s < mc_samples; ++s) {
      Rng child = rng.fork();
      auto path = laplacian_walk(cs.g, cs.b, cs.e, AlphaParam(1.0), child);
      lap[path] += 1.0 / static_cast<double>(mc_samples);
    }
    double tv2 = tv_distance(exact.probs, lap);
    check(std::string(cs.name) + " exact vs Laplacian MC", tv2 < 0.01, tv2, 0.01);
    double tv3 = tv_distance(mc.probs, lap);
    check(std::string(cs.name) + " walk MC vs Laplacian MC", tv3 < 0.01, tv3, 0.01);
  }

  // exact complete-graph length law against the enumeration oracle
  for (int n = 3; n <= 8; ++n) {
    auto exact = exact_lerw_distribution(FiniteGraph::complete(n), 0, n - 1);
    auto marg = length_marginal(exact);
    auto law = lerw_length_pmf_exact(n);
    double worst = 0;
    for (std::size_t j = 0; j < law.size(); ++j) {
      auto it = marg.find(static_cast<std::int64_t>(j) + 2);
      double emp = it == marg.end() ? 0.0 : it->second;
      worst = std::max(worst, std::abs(emp - law[j]));
    }
    check("K" + std::to_string(n) + " length law vs enumeration", worst < 1e-9, worst,
          1e-9);
    // shift identity tying the closed formula to the exact law
    auto pmf = complete_graph_pmf(n);
    double worst2 = std::abs(pmf[0] - 1.0 / n);
    for (std::size_t j = 1; j < pmf.size(); ++j) {
      double expect = j - 1 < law.size() ? (1.0 - 1.0 / n) * law[j - 1] : 0.0;
      worst2 = std::max(worst2, std::abs(pmf[j] - expect));
    }
    check("K" + std::to_string(n) + " closed formula shift identity", worst2 < 1e-12,
          worst2, 1e-12);
  }

  // online eraser against the quadratic reference on random complete-graph walks
  {
    Rng rng(SeedSpec{99, 0});
    double worst = 0;
    for (int trial = 0; trial < 2000; ++trial) {
      IndexedPath path;
      std::int64_t cur = 0;
      path.vertices.push_back(cur);
      CompleteGraphWalk walk(6, cur, rng.fork());
      std::uint64_t len = 1 + rng.below(40);
      for (std::uint64_t k = 0; k < len; ++k) path.vertices.push_back(walk.step());
      auto ref = reference_loop_erase(path);
      auto fast = loop_erase(path);
      OnlineLoopEraser<HashPosMap> online;
      for (auto v : path.vertices) online.push(v);
      if (ref != fast || ref != online.path()) worst = 1;
    }
    check("loop-erasure three-way agreement (2000 random paths)", worst == 0, worst, 0);
  }

  os << (failures == 0 ? "all oracle checks passed\n"
                       : std::to_string(failures) + " oracle checks failed\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace lerw
