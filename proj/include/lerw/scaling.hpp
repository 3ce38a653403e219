#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

namespace lerw {

// 95% Wilson score interval for a binomial proportion. Chosen (and fixed)
// because it stays sane at empirical 0 and 1, where exponential tails live.
struct Interval {
  double lo = 0, hi = 1;
};

inline Interval wilson_interval(std::uint64_t hits, std::uint64_t n) {
  if (n == 0) return {0, 1};
  const double z = 1.959963984540054;  // Phi^-1(0.975)
  double p = static_cast<double>(hits) / n;
  double z2n = z * z / n;
  double denom = 1 + z2n;
  double center = (p + z2n / 2) / denom;
  double half = z * std::sqrt(p * (1 - p) / n + z2n / (4.0 * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

struct SurvivalCurve {
  std::vector<double> lambdas;
  std::vector<double> estimates;  // P-hat(sample > lambda * scale)
  std::vector<Interval> intervals;
  std::uint64_t sample_size = 0;
  double scale = 1;
};

inline SurvivalCurve survival(const std::vector<double>& samples, double scale,
                              const std::vector<double>& lambda_grid) {
  if (samples.empty()) throw std::invalid_argument("survival: empty samples");
  if (lambda_grid.empty()) throw std::invalid_argument("survival: empty grid");
  if (!(scale > 0)) throw std::invalid_argument("survival: scale must be positive");
  for (std::size_t i = 1; i < lambda_grid.size(); ++i)
    if (!(lambda_grid[i] > lambda_grid[i - 1]))
      throw std::invalid_argument("survival: grid must be increasing");
  SurvivalCurve c;
  c.lambdas = lambda_grid;
  c.sample_size = samples.size();
  c.scale = scale;
  for (double lam : lambda_grid) {
    std::uint64_t hits = 0;
    for (double s : samples)
      if (s > lam * scale) ++hits;
    c.estimates.push_back(static_cast<double>(hits) / samples.size());
    c.intervals.push_back(wilson_interval(hits, samples.size()));
  }
  return c;
}

struct ExponentFit {
  double slope = 0, intercept = 0;
  double slope_stderr = 0;
  double r2 = 0;
  int points = 0;
};

// Ordinary least squares on (log x, log y).
inline ExponentFit exponent_fit(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 2) throw std::invalid_argument("exponent_fit: need >= 2 points");
  for (auto [x, y] : pts)
    if (!(x > 0) || !(y > 0))
      throw std::invalid_argument("exponent_fit: values must be positive");
  const int n = static_cast<int>(pts.size());
  double sx = 0, sy = 0;
  std::vector<double> lx(n), ly(n);
  for (int i = 0; i < n; ++i) {
    lx[i] = std::log(pts[i].first);
    ly[i] = std::log(pts[i].second);
    sx += lx[i];
    sy += ly[i];
  }
  double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0) throw std::invalid_argument("exponent_fit: degenerate x values");
  ExponentFit f;
  f.points = n;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0;
  for (int i = 0; i < n; ++i) {
    double e = ly[i] - (f.intercept + f.slope * lx[i]);
    ss_res += e * e;
  }
  f.r2 = syy > 0 ? 1.0 - ss_res / syy : 1.0;
  f.slope_stderr = n > 2 ? std::sqrt(ss_res / (n - 2) / sxx) : 0.0;
  return f;
}

// Plain least-squares line on raw (x, y); used for log-survival shape checks.
inline ExponentFit linear_fit(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 2) throw std::invalid_argument("linear_fit: need >= 2 points");
  const int n = static_cast<int>(pts.size());
  double mx = 0, my = 0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (auto [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0) throw std::invalid_argument("linear_fit: degenerate x values");
  ExponentFit f;
  f.points = n;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0;
  for (auto [x, y] : pts) {
    double e = y - (f.intercept + f.slope * x);
    ss_res += e * e;
  }
  f.r2 = syy > 0 ? 1.0 - ss_res / syy : 1.0;
  f.slope_stderr = n > 2 ? std::sqrt(ss_res / (n - 2) / sxx) : 0.0;
  return f;
}

// Two-sided Kolmogorov-Smirnov statistic of samples against a reference CDF.
inline double ks_distance(std::vector<double> samples,
                          const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_distance: empty samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double F = cdf(samples[i]);
    d = std::max(d, std::abs((i + 1) / n - F));
    d = std::max(d, std::abs(i / n - F));
  }
  return d;
}

// Half the l1 distance over the union support of two discrete distributions.
template <class Key>
double tv_distance(const std::map<Key, double>& p, const std::map<Key, double>& q) {
  double sp = 0, sq = 0;
  for (auto& [k, v] : p) sp += v;
  for (auto& [k, v] : q) sq += v;
  if (std::abs(sp - 1) > 1e-6 || std::abs(sq - 1) > 1e-6)
    throw std::invalid_argument("tv_distance: inputs must be normalized");
  double acc = 0;
  for (auto& [k, v] : p) {
    auto it = q.find(k);
    acc += std::abs(v - (it == q.end() ? 0.0 : it->second));
  }
  for (auto& [k, v] : q)
    if (p.find(k) == p.end()) acc += v;
  return acc / 2;
}

inline double tv_distance_vec(const std::vector<double>& p,
                              const std::vector<double>& q) {
  double sp = 0, sq = 0;
  for (double v : p) sp += v;
  for (double v : q) sq += v;
  if (std::abs(sp - 1) > 1e-6 || std::abs(sq - 1) > 1e-6)
    throw std::invalid_argument("tv_distance: inputs must be normalized");
  double acc = 0;
  std::size_t n = std::max(p.size(), q.size());
  for (std::size_t i = 0; i < n; ++i)
    acc += std::abs((i < p.size() ? p[i] : 0.0) - (i < q.size() ? q[i] : 0.0));
  return acc / 2;
}

}  // namespace lerw
