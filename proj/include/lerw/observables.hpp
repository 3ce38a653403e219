#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lerw/erasure.hpp"
#include "lerw/lattice.hpp"
#include "lerw/parallel.hpp"
#include "lerw/rng.hpp"
#include "lerw/scaling.hpp"
#include "lerw/walker.hpp"

namespace lerw {

// ---------------------------------------------------------------- cut times

struct CutTimeReport {
  std::uint64_t walk_length = 0;   // transitions (trajectory has length+1 vertices)
  std::uint64_t count = 0;         // cut times t in [0, walk_length)
  bool endpoint_cut = true;        // t = walk_length, vacuous future; kept separate
  std::vector<std::uint64_t> positions;  // capped
};

// t is a cut time iff no vertex of R[0,t] recurs after t; equivalently the
// running max of global last-occurrence indices over the prefix is <= t.
// O(L) with a hash of last occurrences; brute force kept in the tests.
inline CutTimeReport cut_times(const std::vector<std::int64_t>& traj,
                               std::size_t max_positions = 64) {
  if (traj.empty()) throw std::invalid_argument("cut_times: empty trajectory");
  std::unordered_map<std::int64_t, std::size_t> last;
  for (std::size_t i = 0; i < traj.size(); ++i) last[traj[i]] = i;
  CutTimeReport rep;
  rep.walk_length = traj.size() - 1;
  std::size_t prefix_max = 0;
  for (std::size_t t = 0; t + 1 < traj.size(); ++t) {
    prefix_max = std::max(prefix_max, last[traj[t]]);
    if (prefix_max <= t) {
      ++rep.count;
      if (rep.positions.size() < max_positions) rep.positions.push_back(t);
    }
  }
  return rep;
}

// ------------------------------------------------------------ ball counting

// Number of path vertices (encoded ids) inside B(v, r).
inline std::uint64_t local_ball_count(const SimplePath& path, const TorusParams& t,
                                      const TorusPoint& v, std::int64_t r_num,
                                      std::int64_t r_den = 1) {
  Ball b(v, r_num, r_den, t);
  std::uint64_t n = 0;
  for (std::int64_t id : path)
    if (b.contains(decode(id, t))) ++n;
  return n;
}

// Ordered pair count V_s = #{(w1, w2) on gamma : |w1 - w2| <= s}, equal
// pairs included, so V_0 = #gamma and V_infinity = (#gamma)^2.
inline std::uint64_t pair_count(const SimplePath& path, const TorusParams& t,
                                double s) {
  if (s < 0) return 0;
  std::vector<TorusPoint> pts;
  pts.reserve(path.size());
  for (std::int64_t id : path) pts.push_back(decode(id, t));
  double s2 = s * s;
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (static_cast<double>(torus_distance2(pts[i], pts[j], t)) <= s2 + 1e-9) ++n;
  return n;
}

// The scaling function of the exponential ball-count bound:
// r^{d/2} above the critical dimension, r^{2+eps} at d = 4.
inline double f_scaling(int d, double r, double eps) {
  if (d > 4) return std::pow(r, d / 2.0);
  if (d == 4) return std::pow(r, 2.0 + eps);
  throw std::invalid_argument("f_scaling: d >= 4 required");
}

// -------------------------------------------------- f-property tail survey

struct FPropertyCell {
  int i = 0;
  double lambda = 0;
  double estimate = 0;
  Interval interval;
  std::uint64_t samples = 0;
  bool flagged = false;  // too few replicas reached this stopping index
};

struct FPropertySurvey {
  std::vector<FPropertyCell> cells;       // row-major over (i, lambda)
  std::vector<std::vector<double>> counts;  // counts[i-1] = samples of L_{i,v,r}
  double scale = 0;                       // f(r)
  int max_i = 0;
};

// The point antipodal to v; used as a canonical walk start outside B(v,2r)
// (valid since r < N/8).
inline TorusPoint antipodal(const TorusPoint& v, const TorusParams& t) {
  TorusPoint p = v;
  for (int a = 0; a < t.dim; ++a)
    p.c[a] = static_cast<std::int32_t>((p.c[a] + t.side / 2) % t.side);
  return p;
}

// One walk's ball counts L_{i,v,r} = #(LE(R[0,t_i]) ∩ B(v,r)) for
// i = 1..max_i (shorter if the step cap is hit first).
inline std::vector<double> f_property_replica(const TorusParams& t,
                                              const TorusPoint& v, std::int64_t r,
                                              int max_i, SeedSpec seed) {
  TorusPoint start = antipodal(v, t);
  std::uint64_t cap =
      200ull * static_cast<std::uint64_t>(t.volume) * static_cast<std::uint64_t>(max_i);
  Rng rng(seed);
  TorusWalk walk(t, start, rng);
  AnnulusTracker tracker(t, v, r, 1, start);
  OnlineLoopEraser<DensePosMap> eraser{t.volume};
  eraser.push(walk.index());
  std::vector<double> counts;
  while (static_cast<int>(tracker.completed()) < max_i && tracker.time() < cap) {
    walk.step();
    eraser.push(walk.index());
    if (tracker.observe_step(walk.last_axis(), walk.last_sign()))
      counts.push_back(static_cast<double>(local_ball_count(eraser.path(), t, v, r)));
  }
  return counts;
}

inline FPropertySurvey f_property_aggregate(
    const std::vector<std::vector<double>>& per_replica, int d, std::int64_t r,
    int max_i, const std::vector<double>& lambda_grid, double eps) {
  for (std::size_t i = 1; i < lambda_grid.size(); ++i)
    if (!(lambda_grid[i] > lambda_grid[i - 1]))
      throw std::invalid_argument("lambda grid must be increasing");
  FPropertySurvey survey;
  survey.scale = f_scaling(d, static_cast<double>(r), eps);
  survey.max_i = max_i;
  survey.counts.assign(max_i, {});
  for (auto& c : per_replica)
    for (std::size_t i = 0; i < c.size() && i < static_cast<std::size_t>(max_i); ++i)
      survey.counts[i].push_back(c[i]);
  for (int i = 1; i <= max_i; ++i) {
    const auto& samples = survey.counts[i - 1];
    for (double lam : lambda_grid) {
      FPropertyCell cell;
      cell.i = i;
      cell.lambda = lam;
      cell.samples = samples.size();
      if (samples.size() < std::max<std::size_t>(10, per_replica.size() / 10)) {
        cell.flagged = true;
      } else {
        std::uint64_t hits = 0;
        for (double s : samples)
          if (s > lam * survey.scale) ++hits;
        cell.estimate = static_cast<double>(hits) / samples.size();
        cell.interval = wilson_interval(hits, samples.size());
      }
      survey.cells.push_back(cell);
    }
  }
  return survey;
}

// Monte Carlo estimate of the unconditional tail P(L_{i,v,r} > lambda f(r)).
// The paper-style conditional version quantifies over excursion ensembles
// and has no canonical Monte Carlo estimand; the unconditional tail is the
// testable surrogate.
inline FPropertySurvey f_property_survey(const TorusParams& t, const TorusPoint& v,
                                         std::int64_t r, int max_i,
                                         const std::vector<double>& lambda_grid,
                                         std::uint64_t replicas, SeedSpec seed,
                                         double eps = 0.1, int threads = 1) {
  if (max_i < 1) throw std::invalid_argument("max_i >= 1 required");
  auto all = run_indexed(replicas, threads, [&](std::uint64_t idx) {
    return f_property_replica(t, v, r, max_i,
                              SeedSpec{seed.master_seed, seed.replica_index + idx});
  });
  return f_property_aggregate(all, t.dim, r, max_i, lambda_grid, eps);
}

// --------------------------------------------- stopping time concentration

struct StoppingMomentEstimate {
  std::int64_t radius = 0;
  int cycles = 0;                 // n: even-to-even cycles per replica
  double e_hat = 0;               // mean cycle duration t_{2i+2} - t_{2i}
  double e_halfwidth = 0;
  double sigma_hat = 0;           // sd of (t_{2n} - n E) / sqrt(n)
  std::uint64_t replicas_used = 0;
  std::uint64_t excluded = 0;     // walks capped before completing n cycles
  SurvivalCurve tail;             // P(|t_{2n} - n E| > lambda sigma sqrt(n))
};

// One walk's stopping-time tape t_0..t_{2n}; empty if the step cap was hit.
inline std::vector<std::uint64_t> stopping_time_replica(const TorusParams& t,
                                                        const TorusPoint& v,
                                                        std::int64_t r, int n_cycles,
                                                        SeedSpec seed) {
  TorusPoint start = antipodal(v, t);
  std::uint64_t cap = 1000ull * static_cast<std::uint64_t>(t.volume) *
                      static_cast<std::uint64_t>(n_cycles);
  Rng rng(seed);
  TorusWalk walk(t, start, rng);
  AnnulusTracker tracker(t, v, r, 1, start);
  while (static_cast<int>(tracker.completed()) < 2 * n_cycles &&
         tracker.time() < cap) {
    walk.step();
    tracker.observe_step(walk.last_axis(), walk.last_sign());
  }
  if (static_cast<int>(tracker.completed()) < 2 * n_cycles) return {};
  return tracker.tape().times;
}

inline StoppingMomentEstimate stopping_time_aggregate(
    const std::vector<std::vector<std::uint64_t>>& tapes, std::int64_t r,
    int n_cycles, const std::vector<double>& lambda_grid) {
  StoppingMomentEstimate est;
  est.radius = r;
  est.cycles = n_cycles;
  double sum = 0, sum2 = 0;
  std::uint64_t cycles_seen = 0;
  std::vector<double> t_final;
  for (auto& tape : tapes) {
    if (tape.empty()) {
      ++est.excluded;
      continue;
    }
    ++est.replicas_used;
    for (int i = 0; i + 2 < static_cast<int>(tape.size()); i += 2) {
      double dt = static_cast<double>(tape[i + 2] - tape[i]);
      sum += dt;
      sum2 += dt * dt;
      ++cycles_seen;
    }
    t_final.push_back(static_cast<double>(tape[2 * n_cycles]));
  }
  if (cycles_seen < 2 || t_final.size() < 2)
    throw std::runtime_error("stopping_time_moments: not enough completed replicas");
  est.e_hat = sum / cycles_seen;
  double cyc_var = std::max(0.0, sum2 / cycles_seen - est.e_hat * est.e_hat);
  est.e_halfwidth = 1.96 * std::sqrt(cyc_var / cycles_seen);

  double root_n = std::sqrt(static_cast<double>(n_cycles));
  std::vector<double> dev;
  double dsum2 = 0;
  dev.reserve(t_final.size());
  for (double tf : t_final) {
    double d = (tf - n_cycles * est.e_hat) / root_n;
    dev.push_back(d);
    dsum2 += d * d;
  }
  est.sigma_hat = std::sqrt(dsum2 / dev.size());
  std::vector<double> abs_dev;
  abs_dev.reserve(dev.size());
  for (double d : dev) abs_dev.push_back(std::abs(d));
  est.tail = survival(abs_dev, est.sigma_hat, lambda_grid);
  return est;
}

// E and sigma of the annulus stopping-time increments; E(r) should scale as
// N^d r^{2-d} (the ball-search time dominates the r^2 escape time).
inline StoppingMomentEstimate stopping_time_moments(
    const TorusParams& t, const TorusPoint& v, std::int64_t r, int n_cycles,
    std::uint64_t replicas, SeedSpec seed, const std::vector<double>& lambda_grid,
    int threads = 1) {
  if (n_cycles < 1) throw std::invalid_argument("need >= 1 cycle");
  auto tapes = run_indexed(replicas, threads, [&](std::uint64_t idx) {
    return stopping_time_replica(t, v, r, n_cycles,
                                 SeedSpec{seed.master_seed, seed.replica_index + idx});
  });
  return stopping_time_aggregate(tapes, r, n_cycles, lambda_grid);
}

// ------------------------------------------------------ appendix scaling

struct ExitPointEstimate {
  double p_hat = 0;            // probability of exiting B(0,r) at w
  Interval interval;
  std::uint64_t replicas = 0;
  std::vector<std::pair<std::int64_t, double>> distribution;  // exit idx -> p
};

// Monte Carlo law of the exit point of a walk from v inside B(0,r): the last
// vertex inside the ball before the first step out.
inline ExitPointEstimate exit_point_probability(const TorusParams& t, std::int64_t r,
                                                const TorusPoint& v,
                                                const TorusPoint& w,
                                                std::uint64_t replicas, SeedSpec seed,
                                                int threads = 1) {
  TorusPoint origin{};
  Ball ball(origin, r, 1, t);
  if (!ball.contains(v)) throw std::invalid_argument("v must lie inside B(0,r)");
  if (ball.classify(w) != BallRegion::inner_boundary)
    throw std::invalid_argument("w must lie on the inner boundary of B(0,r)");
  std::int64_t w_idx = encode(w, t);

  auto replica = [&](std::uint64_t idx) -> std::int64_t {
    Rng rng(SeedSpec{seed.master_seed, seed.replica_index + idx});
    TorusWalk walk(t, v, rng);
    std::int64_t last_inside = walk.index();
    for (;;) {
      walk.step();
      if (!ball.contains(walk.position())) return last_inside;
      last_inside = walk.index();
    }
  };

  auto exits = run_indexed(replicas, threads, replica);

  std::unordered_map<std::int64_t, std::uint64_t> counts;
  for (std::int64_t e : exits) ++counts[e];
  ExitPointEstimate est;
  est.replicas = replicas;
  std::uint64_t hits = counts.count(w_idx) ? counts[w_idx] : 0;
  est.p_hat = static_cast<double>(hits) / replicas;
  est.interval = wilson_interval(hits, replicas);
  for (auto& [idx, c] : counts)
    est.distribution.emplace_back(idx, static_cast<double>(c) / replicas);
  return est;
}

struct BallHittingEstimate {
  std::vector<double> per_start;       // hit probability per sampled start
  std::vector<Interval> intervals;
  std::uint64_t walk_length = 0;
  double min_estimate = 1;
};

// Probability that a walk of length C1 N^d r^{2-d} hits B(0,r), per random
// start vertex.
inline BallHittingEstimate ball_hitting_time_check(const TorusParams& t,
                                                   std::int64_t r, int starts,
                                                   std::uint64_t replicas_per_start,
                                                   SeedSpec seed, double c1 = 10,
                                                   int threads = 1) {
  if (2 * r >= t.side) throw std::invalid_argument("r < N/2 required");
  TorusPoint origin{};
  Ball ball(origin, r, 1, t);
  double len = c1 * static_cast<double>(t.volume) *
               std::pow(static_cast<double>(r), 2.0 - t.dim);
  std::uint64_t walk_len = static_cast<std::uint64_t>(len);

  BallHittingEstimate est;
  est.walk_length = walk_len;
  Rng pick(SeedSpec{seed.master_seed, seed.replica_index + 1000000});
  for (int s = 0; s < starts; ++s) {
    std::int64_t sidx =
        static_cast<std::int64_t>(pick.below(static_cast<std::uint64_t>(t.volume)));
    TorusPoint start = decode(sidx, t);
    auto replica = [&](std::uint64_t idx) -> int {
      Rng rng(SeedSpec{seed.master_seed,
                       seed.replica_index + (s + 1) * 10000019ull + idx});
      TorusWalk walk(t, start, rng);
      if (ball.contains(walk.position())) return 1;
      for (std::uint64_t k = 0; k < walk_len; ++k) {
        walk.step();
        if (ball.contains2(torus_distance2(walk.position(), origin, t))) return 1;
      }
      return 0;
    };
    auto hits_v = run_indexed(replicas_per_start, threads, replica);
    std::uint64_t hits = 0;
    for (int h : hits_v) hits += h;
    double p = static_cast<double>(hits) / replicas_per_start;
    est.per_start.push_back(p);
    est.intervals.push_back(wilson_interval(hits, replicas_per_start));
    est.min_estimate = std::min(est.min_estimate, p);
  }
  return est;
}

}  // namespace lerw
