#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <stdexcept>
#include <vector>

#include "lerw/erasure.hpp"
#include "lerw/graph.hpp"
#include "lerw/rng.hpp"
#include "lerw/walker.hpp"

namespace lerw {

// Ground truth on tiny instances. Everything here is deliberately simple and
// independent of the production code paths it checks.

struct PathDistribution {
  std::map<std::vector<int>, double> probs;  // simple path b..e -> probability
  std::map<std::vector<int>, std::uint64_t> counts;  // empirical runs only
  bool exact_rational = false;  // arithmetic actually used (logged for audit)
  std::uint64_t paths_seen = 0;

  double total() const {
    double t = 0;
    for (auto& [k, v] : probs) t += v;
    return t;
  }
};

namespace oracle_detail {

// Dense Gaussian elimination for the Dirichlet system, exact in the scalar.
template <class Scalar>
std::vector<Scalar> solve_dirichlet(const FiniteGraph& g,
                                    const std::vector<char>& zero, int e) {
  const int n = g.size();
  std::vector<int> free_of(n, -1), vert_of;
  for (int v = 0; v < n; ++v)
    if (!zero[v] && v != e) {
      free_of[v] = static_cast<int>(vert_of.size());
      vert_of.push_back(v);
    }
  const int m = static_cast<int>(vert_of.size());
  std::vector<std::vector<Scalar>> A(m, std::vector<Scalar>(m + 1, Scalar(0)));
  for (int i = 0; i < m; ++i) {
    int v = vert_of[i];
    A[i][i] = Scalar(static_cast<int>(g.neighbors(v).size()));
    for (int w : g.neighbors(v)) {
      if (w == e) A[i][m] += Scalar(1);
      else if (free_of[w] >= 0) A[i][free_of[w]] -= Scalar(1);
    }
  }
  for (int col = 0; col < m; ++col) {
    int piv = -1;
    for (int r = col; r < m; ++r)
      if (A[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::runtime_error("singular Dirichlet system");
    std::swap(A[col], A[piv]);
    for (int r = 0; r < m; ++r) {
      if (r == col || A[r][col] == 0) continue;
      Scalar factor = A[r][col] / A[col][col];
      for (int c = col; c <= m; ++c) A[r][c] -= factor * A[col][c];
    }
  }
  std::vector<Scalar> f(n, Scalar(0));
  f[e] = Scalar(1);
  for (int i = 0; i < m; ++i) f[vert_of[i]] = A[i][m] / A[i][i];
  return f;
}

template <class Scalar>
void expand(const FiniteGraph& g, int e, std::vector<int>& path,
            std::vector<char>& zero, const Scalar& prob,
            std::map<std::vector<int>, Scalar>& out, std::uint64_t cap,
            std::uint64_t& seen) {
  auto f = solve_dirichlet<Scalar>(g, zero, e);
  int tip = path.back();
  Scalar total(0);
  for (int w : g.neighbors(tip)) total += f[w];
  if (total == 0) throw std::runtime_error("trapped Laplacian walk state");
  for (int w : g.neighbors(tip)) {
    if (f[w] == 0) continue;
    Scalar p = prob * f[w] / total;
    if (w == e) {
      path.push_back(e);
      out[path] += p;
      path.pop_back();
      if (++seen > cap)
        throw std::runtime_error("exact_lerw_distribution: path cap exceeded at " +
                                 std::to_string(seen));
    } else {
      path.push_back(w);
      zero[w] = 1;
      expand(g, e, path, zero, p, out, cap, seen);
      zero[w] = 0;
      path.pop_back();
    }
  }
}

}  // namespace oracle_detail

// Exact LERW path distribution via the alpha=1 Laplacian walk representation:
// exhaustive expansion over growing simple paths, each step's Dirichlet
// system solved by direct elimination. Rational arithmetic up to 12 vertices,
// 128-bit floats above (recorded in the result).
inline PathDistribution exact_lerw_distribution(const FiniteGraph& g, int b, int e,
                                                std::uint64_t cap = 100000) {
  if (!g.connected()) throw std::invalid_argument("graph must be connected");
  if (b == e) throw std::invalid_argument("b == e");
  PathDistribution dist;
  std::vector<int> path{b};
  std::vector<char> zero(g.size(), 0);
  zero[b] = 1;
  std::uint64_t seen = 0;
  if (g.size() <= 12) {
    using R = boost::multiprecision::cpp_rational;
    std::map<std::vector<int>, R> out;
    oracle_detail::expand<R>(g, e, path, zero, R(1), out, cap, seen);
    R total(0);
    for (auto& [k, v] : out) total += v;
    if (total != 1) throw std::runtime_error("exact distribution not normalized");
    for (auto& [k, v] : out) dist.probs[k] = static_cast<double>(v);
    dist.exact_rational = true;
  } else {
    using Q = boost::multiprecision::cpp_bin_float_quad;
    std::map<std::vector<int>, Q> out;
    oracle_detail::expand<Q>(g, e, path, zero, Q(1), out, cap, seen);
    Q total(0);
    for (auto& [k, v] : out) total += v;
    if (abs(total - 1) > 1e-10)
      throw std::runtime_error("exact distribution not normalized");
    for (auto& [k, v] : out) dist.probs[k] = static_cast<double>(v);
    dist.exact_rational = false;
  }
  dist.paths_seen = seen;
  return dist;
}

// Empirical LERW path law: sample walk_until_hit then loop_erase.
inline PathDistribution mc_lerw_distribution(const FiniteGraph& g, int b, int e,
                                             std::uint64_t samples, SeedSpec seed) {
  if (samples < 1) throw std::invalid_argument("samples >= 1 required");
  PathDistribution dist;
  Rng rng(seed);
  std::uint64_t cap = 1000000ull * g.size();
  for (std::uint64_t s = 0; s < samples; ++s) {
    GraphWalk walk(g, b, rng.fork());
    IndexedPath traj;
    auto res = walk_until_hit(walk, b, e, cap,
                              [&](std::int64_t v) { traj.vertices.push_back(v); });
    if (res.truncated) throw std::runtime_error("mc_lerw_distribution: cap hit");
    SimplePath le = loop_erase(traj);
    std::vector<int> key(le.begin(), le.end());
    ++dist.counts[key];
  }
  for (auto& [k, c] : dist.counts)
    dist.probs[k] = static_cast<double>(c) / static_cast<double>(samples);
  return dist;
}

// Direct quadratic transcription of the loop-erasure recursion; test oracle
// for the linear implementations.
inline SimplePath reference_loop_erase(const IndexedPath& gamma) {
  if (gamma.vertices.empty()) throw std::invalid_argument("empty path");
  const auto& g = gamma.vertices;
  const std::int64_t n = gamma.length();
  SimplePath out;
  std::int64_t pos = 0;
  for (;;) {
    out.push_back(g[pos]);
    std::int64_t j = -1;
    for (std::int64_t k = 0; k < n; ++k)
      if (g[k] == g[pos]) j = k;
    if (j + 1 >= n) break;
    pos = j + 1;
  }
  return out;
}

// Length marginal of a path distribution (number of vertices on the path).
inline std::map<std::int64_t, double> length_marginal(const PathDistribution& d) {
  std::map<std::int64_t, double> m;
  for (auto& [path, p] : d.probs) m[static_cast<std::int64_t>(path.size())] += p;
  return m;
}

}  // namespace lerw
