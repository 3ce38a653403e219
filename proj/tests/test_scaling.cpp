#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "lerw/rng.hpp"
#include "lerw/scaling.hpp"

using namespace lerw;

TEST_CASE("wilson interval brackets the estimate and behaves at the boundaries") {
  auto iv = wilson_interval(50, 100);
  CHECK(iv.lo < 0.5);
  CHECK(iv.hi > 0.5);
  CHECK(iv.lo == doctest::Approx(0.4038315).epsilon(1e-4));
  CHECK(iv.hi == doctest::Approx(0.5961685).epsilon(1e-4));
  auto zero = wilson_interval(0, 100);
  CHECK(zero.lo < 1e-12);  // analytically zero up to rounding
  CHECK(zero.hi > 0.0);
  CHECK(zero.hi < 0.05);
  auto one = wilson_interval(100, 100);
  CHECK(one.hi == 1.0);
  CHECK(one.lo > 0.95);
}

TEST_CASE("survival curve hand values, monotonicity, scale equivariance") {
  std::vector<double> samples{1, 2, 3, 4};
  auto c = survival(samples, 1.0, {0.5, 2.5, 10.0});
  CHECK(c.estimates[0] == 1.0);
  CHECK(c.estimates[1] == 0.5);
  CHECK(c.estimates[2] == 0.0);
  for (std::size_t i = 1; i < c.estimates.size(); ++i)
    CHECK(c.estimates[i] <= c.estimates[i - 1]);

  std::vector<double> scaled;
  for (double s : samples) scaled.push_back(s / 2.0);
  auto c2 = survival(samples, 2.0, {0.5, 2.5, 10.0});
  auto c3 = survival(scaled, 1.0, {0.5, 2.5, 10.0});
  for (std::size_t i = 0; i < c2.estimates.size(); ++i)
    CHECK(c2.estimates[i] == c3.estimates[i]);

  CHECK_THROWS_AS(survival({}, 1.0, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(survival(samples, 1.0, {}), std::invalid_argument);
  CHECK_THROWS_AS(survival(samples, 1.0, {2.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(survival(samples, 0.0, {1.0}), std::invalid_argument);
}

TEST_CASE("exponent fit recovers exact power laws") {
  auto f = exponent_fit({{10.0, std::pow(10.0, 2.5)}, {100.0, std::pow(100.0, 2.5)}});
  CHECK(f.slope == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));

  auto g = exponent_fit({{2.0, 4.0}, {4.0, 16.0}, {8.0, 64.0}});
  CHECK(g.slope == doctest::Approx(2.0).epsilon(1e-12));

  // slope invariant under y scaling
  auto h = exponent_fit({{2.0, 40.0}, {4.0, 160.0}, {8.0, 640.0}});
  CHECK(h.slope == doctest::Approx(g.slope).epsilon(1e-12));

  CHECK_THROWS_AS(exponent_fit({{1.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(exponent_fit({{1.0, -1.0}, {2.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(exponent_fit({{1.0, 1.0}, {1.0, 2.0}}), std::invalid_argument);
}

TEST_CASE("linear fit recovers an exact line") {
  auto f = linear_fit({{0.0, 1.0}, {1.0, 3.0}, {2.0, 5.0}});
  CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ks distance hand cases") {
  // one sample at the cdf's median
  auto cdf = [](double x) { return x < 0 ? 0.0 : (x > 1 ? 1.0 : x); };
  CHECK(ks_distance({0.5}, cdf) == doctest::Approx(0.5));
  // empirical vs its own right-continuous cdf: the left-limit side of the
  // statistic contributes exactly 1/n at each atom
  std::vector<double> s{0.1, 0.4, 0.9};
  auto emp = [&](double x) {
    double n = 0;
    for (double v : s)
      if (v <= x) ++n;
    return n / s.size();
  };
  CHECK(ks_distance(s, emp) == doctest::Approx(1.0 / 3));
  CHECK_THROWS_AS(ks_distance({}, cdf), std::invalid_argument);
}

TEST_CASE("ks distance of true-cdf samples is DKW-small at 1e5") {
  Rng rng(SeedSpec{21, 0});
  std::vector<double> samples;
  for (int k = 0; k < 100000; ++k) samples.push_back(rng.real());
  double d = ks_distance(samples, [](double x) {
    return x < 0 ? 0.0 : (x > 1 ? 1.0 : x);
  });
  CHECK(d < 0.01);
}

TEST_CASE("tv distance hand cases") {
  std::map<int, double> p{{0, 1.0}};
  std::map<int, double> q{{0, 0.5}, {1, 0.5}};
  std::map<int, double> r{{2, 0.5}, {3, 0.5}};
  CHECK(tv_distance(p, p) == 0.0);
  CHECK(tv_distance(p, q) == doctest::Approx(0.5));
  CHECK(tv_distance(q, p) == doctest::Approx(0.5));
  CHECK(tv_distance(p, r) == doctest::Approx(1.0));
  std::map<int, double> bad{{0, 0.7}};
  CHECK_THROWS_AS(tv_distance(p, bad), std::invalid_argument);

  CHECK(tv_distance_vec({0.5, 0.5}, {0.5, 0.5}) == 0.0);
  CHECK(tv_distance_vec({1.0}, {0.5, 0.5}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(tv_distance_vec({0.5}, {1.0}), std::invalid_argument);
}
