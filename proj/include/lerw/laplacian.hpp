#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lerw/graph.hpp"
#include "lerw/rng.hpp"

namespace lerw {

// Solution of  f(e)=1, f|_zero = 0, (Delta f)|_free = 0  on a finite graph.
struct DirichletField {
  std::vector<double> values;
  std::vector<char> is_zero;  // boundary indicator (the growing path)
  int one_vertex = -1;
  double residual = 0;  // max |Delta f| over free vertices
};

inline constexpr double kDirichletTol = 1e-10;

namespace detail {

// Max harmonic defect over free vertices.
inline double harmonic_residual(const FiniteGraph& g, const DirichletField& f) {
  double worst = 0;
  for (int v = 0; v < g.size(); ++v) {
    if (f.is_zero[v] || v == f.one_vertex) continue;
    double acc = 0;
    for (int w : g.neighbors(v)) acc += f.values[w];
    worst = std::max(worst, std::abs(f.values[v] - acc / g.neighbors(v).size()));
  }
  return worst;
}

}  // namespace detail

// Conjugate gradient on the free-vertex system (deg(v) f(v) - sum_{free w~v}
// f(w) = #{w~v : w = e}). SPD, deterministic iteration order. `warm` may carry
// a previous field to start from; the Laplacian walk grows its boundary one
// vertex at a time, so warm starts converge in a few iterations.
inline DirichletField dirichlet_solve(const FiniteGraph& g,
                                      const std::vector<char>& zero_set,
                                      int one_vertex, double tol = kDirichletTol,
                                      const DirichletField* warm = nullptr) {
  const int n = g.size();
  if (n < 2 || !g.connected()) throw std::invalid_argument("degenerate graph");
  if (one_vertex < 0 || one_vertex >= n || zero_set[one_vertex])
    throw std::invalid_argument("target must be a non-boundary vertex");
  bool any_zero = false;
  for (char z : zero_set) any_zero |= (z != 0);
  if (!any_zero) throw std::invalid_argument("zero set must be nonempty");

  std::vector<int> free_of(n, -1), vert_of;
  for (int v = 0; v < n; ++v)
    if (!zero_set[v] && v != one_vertex) {
      free_of[v] = static_cast<int>(vert_of.size());
      vert_of.push_back(v);
    }
  const int m = static_cast<int>(vert_of.size());

  std::vector<double> x(m, 0), b(m, 0);
  for (int i = 0; i < m; ++i) {
    for (int w : g.neighbors(vert_of[i]))
      if (w == one_vertex) b[i] += 1.0;
    if (warm && !warm->values.empty()) x[i] = warm->values[vert_of[i]];
  }

  auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
    for (int i = 0; i < m; ++i) {
      int v = vert_of[i];
      double acc = static_cast<double>(g.neighbors(v).size()) * in[i];
      for (int w : g.neighbors(v))
        if (free_of[w] >= 0) acc -= in[free_of[w]];
      out[i] = acc;
    }
  };

  std::vector<double> r(m), p(m), ap(m);
  apply(x, ap);
  double bnorm2 = 0, rr = 0;
  for (int i = 0; i < m; ++i) {
    r[i] = b[i] - ap[i];
    p[i] = r[i];
    bnorm2 += b[i] * b[i];
    rr += r[i] * r[i];
  }
  double target2 = tol * tol * std::max(bnorm2, 1e-300);
  int maxit = 20 * m + 100;
  for (int it = 0; it < maxit && rr > target2; ++it) {
    apply(p, ap);
    double pap = 0;
    for (int i = 0; i < m; ++i) pap += p[i] * ap[i];
    if (pap <= 0) break;
    double alpha = rr / pap;
    double rr_new = 0;
    for (int i = 0; i < m; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
      rr_new += r[i] * r[i];
    }
    double beta = rr_new / rr;
    rr = rr_new;
    for (int i = 0; i < m; ++i) p[i] = r[i] + beta * p[i];
  }

  DirichletField f;
  f.values.assign(n, 0.0);
  f.is_zero.assign(zero_set.begin(), zero_set.end());
  f.one_vertex = one_vertex;
  f.values[one_vertex] = 1.0;
  for (int i = 0; i < m; ++i) {
    // discrete maximum principle: any excursion outside [0,1] is numerical
    double v = x[i];
    if (v < -1e-8 || v > 1 + 1e-8)
      throw std::runtime_error("dirichlet_solve: maximum principle violated");
    f.values[vert_of[i]] = std::min(1.0, std::max(0.0, v));
  }
  f.residual = detail::harmonic_residual(g, f);
  return f;
}

struct AlphaParam {
  double alpha = 1.0;
  explicit AlphaParam(double a) : alpha(a) {
    if (!(a > 0) || !std::isfinite(a)) throw std::invalid_argument("alpha must be positive and finite");
  }
};

// One step of the alpha-power Laplacian walk: sample a neighbor w of the path
// tip with probability f(w)^alpha / sum over neighbors. Reaching e ends the
// walk.
inline int laplacian_step(const FiniteGraph& g, const DirichletField& f, int current,
                          const AlphaParam& a, Rng& rng) {
  const auto& nb = g.neighbors(current);
  double total = 0;
  for (int w : nb) total += f.values[w] > 0 ? std::pow(f.values[w], a.alpha) : 0.0;
  if (total <= 0)
    throw std::runtime_error("laplacian_step: all neighbor weights vanish");
  double u = rng.real() * total;
  double acc = 0;
  int chosen = nb.back();
  for (int w : nb) {
    if (f.values[w] <= 0) continue;
    acc += std::pow(f.values[w], a.alpha);
    if (u < acc) {
      chosen = w;
      break;
    }
  }
  return chosen;
}

// Full alpha-power Laplacian walk from b to e; each step re-solves the
// Dirichlet problem with the path so far as the zero boundary.
inline std::vector<int> laplacian_walk(const FiniteGraph& g, int b, int e,
                                       const AlphaParam& a, Rng& rng,
                                       double tol = kDirichletTol) {
  if (b == e) throw std::invalid_argument("laplacian_walk: b == e");
  std::vector<int> path{b};
  std::vector<char> zero(g.size(), 0);
  zero[b] = 1;
  DirichletField field = dirichlet_solve(g, zero, e, tol);
  for (;;) {
    int next = laplacian_step(g, field, path.back(), a, rng);
    path.push_back(next);
    if (next == e) return path;
    zero[next] = 1;
    field = dirichlet_solve(g, zero, e, tol, &field);
  }
}

// The paper's closed formula for the complete graph:
//   P(#LE = k) = (k-1)/N * prod_{i=1}^{k-2} (1 - i/N),  k = 2..N+1.
// Returned as {k -> p} starting at k=2. Convention (fixed by the exact
// oracle, see oracle.hpp): with Q_n the exact LERW length law on the
// n-vertex complete graph, this formula with parameter n satisfies
//   pmf(n)[2] = 1/n,  pmf(n)[k] = (1 - 1/n) Q_n(k-1)  for k >= 3,
// i.e. it is the law of 1 + #LE up to an O(1/n) mixture term.
inline std::vector<double> complete_graph_pmf(std::int64_t N) {
  if (N < 1) throw std::invalid_argument("N >= 1 required");
  std::vector<double> p;  // p[j] = P(#LE = j+2)
  double surv = 1.0;
  for (std::int64_t k = 2; k <= N + 1; ++k) {
    double hazard = static_cast<double>(k - 1) / static_cast<double>(N);
    p.push_back(hazard * surv);
    surv *= 1.0 - hazard;
  }
  return p;
}

// Exact LERW length law on K_n (n vertices): termination hazard with j path
// vertices is (j+1)/n, support k = 2..n. Derived from the alpha=1 Laplacian
// walk on K_n and cross-checked against the exact path-distribution oracle.
inline std::vector<double> lerw_length_pmf_exact(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("n >= 2 required");
  std::vector<double> p;  // p[j] = P(#LE = j+2)
  double surv = 1.0;
  for (std::int64_t k = 2; k <= n; ++k) {
    double hazard = static_cast<double>(k) / static_cast<double>(n);
    p.push_back(hazard * surv);
    surv *= 1.0 - hazard;
  }
  return p;
}

inline double complete_graph_limit_cdf(double t) {
  if (t < 0) throw std::invalid_argument("t >= 0 required");
  return 1.0 - std::exp(-0.5 * t * t);
}

// Samples the alpha-walk length on K_N directly from the per-step hazard:
// with i path vertices, the tip's neighbors are e (weight 1) and N-i-1 free
// vertices of weight (i+1)^-alpha, so the termination probability is
// 1 / (1 + (N-i-1) (i+1)^-alpha). Never materializes the graph.
inline std::int64_t complete_graph_alpha_length(std::int64_t N, const AlphaParam& a,
                                                Rng& rng) {
  if (N < 2) throw std::invalid_argument("N >= 2 required");
  for (std::int64_t i = 1;; ++i) {
    double free_cnt = static_cast<double>(N - i - 1);
    double hazard =
        free_cnt <= 0 ? 1.0 : 1.0 / (1.0 + free_cnt * std::pow(i + 1, -a.alpha));
    if (rng.real() < hazard) return i + 1;  // path length counts e
  }
}

}  // namespace lerw
