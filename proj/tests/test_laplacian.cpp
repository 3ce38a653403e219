#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "lerw/laplacian.hpp"
#include "lerw/oracle.hpp"
#include "lerw/scaling.hpp"

using namespace lerw;

TEST_CASE("dirichlet solve on the path graph is linear interpolation") {
  auto g = FiniteGraph::path(3);
  std::vector<char> zero{1, 0, 0};
  auto f = dirichlet_solve(g, zero, 2);
  CHECK(f.values[0] == 0.0);
  CHECK(f.values[1] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(f.values[2] == 1.0);
  CHECK(f.residual < 1e-9);
}

TEST_CASE("dirichlet solve on C5 matches the hand solution") {
  auto g = FiniteGraph::cycle(5);
  std::vector<char> zero{1, 0, 0, 0, 0};
  auto f = dirichlet_solve(g, zero, 2);
  CHECK(f.values[1] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(f.values[3] == doctest::Approx(2.0 / 3).epsilon(1e-9));
  CHECK(f.values[4] == doctest::Approx(1.0 / 3).epsilon(1e-9));
}

TEST_CASE("dirichlet solve on the complete graph gives 1/(i+1) to free vertices") {
  for (int n : {4, 7, 10}) {
    auto g = FiniteGraph::complete(n);
    for (int i = 1; i < n - 1; ++i) {
      std::vector<char> zero(n, 0);
      for (int k = 0; k < i; ++k) zero[k] = 1;
      auto f = dirichlet_solve(g, zero, n - 1);
      for (int v = i; v < n - 1; ++v)
        CHECK(f.values[v] == doctest::Approx(1.0 / (i + 1)).epsilon(1e-9));
    }
  }
}

TEST_CASE("iterative solve matches dense elimination on assorted graphs") {
  std::vector<FiniteGraph> graphs;
  graphs.push_back(FiniteGraph::cycle(9));
  graphs.push_back(FiniteGraph::complete(8));
  graphs.push_back(FiniteGraph::torus(TorusParams(4, 2)));
  graphs.push_back(FiniteGraph::torus(TorusParams(3, 3)));
  for (auto& g : graphs) {
    std::vector<char> zero(g.size(), 0);
    zero[0] = 1;
    zero[1] = 1;
    int e = g.size() - 1;
    auto iter = dirichlet_solve(g, zero, e);
    auto dense = oracle_detail::solve_dirichlet<double>(g, zero, e);
    for (int v = 0; v < g.size(); ++v)
      CHECK(std::abs(iter.values[v] - dense[v]) < 1e-8);
  }
}

TEST_CASE("dirichlet fields respect the maximum principle and boundary data") {
  auto g = FiniteGraph::torus(TorusParams(5, 2));
  std::vector<char> zero(g.size(), 0);
  zero[0] = zero[3] = zero[12] = 1;
  auto f = dirichlet_solve(g, zero, 24);
  for (int v = 0; v < g.size(); ++v) {
    CHECK(f.values[v] >= 0.0);
    CHECK(f.values[v] <= 1.0);
  }
  CHECK(f.values[0] == 0.0);
  CHECK(f.values[24] == 1.0);
}

TEST_CASE("solver rejects degenerate inputs") {
  auto g = FiniteGraph::path(3);
  std::vector<char> none{0, 0, 0};
  CHECK_THROWS_AS(dirichlet_solve(g, none, 2), std::invalid_argument);
  std::vector<char> zero{1, 0, 0};
  CHECK_THROWS_AS(dirichlet_solve(g, zero, 0), std::invalid_argument);
  CHECK_THROWS_AS(AlphaParam(0.0), std::invalid_argument);
  CHECK_THROWS_AS(AlphaParam(-1.0), std::invalid_argument);
}

TEST_CASE("laplacian step probabilities on C5 from the hand field") {
  auto g = FiniteGraph::cycle(5);
  std::vector<char> zero{1, 0, 0, 0, 0};
  auto f = dirichlet_solve(g, zero, 2);
  int to1 = 0;
  const int n = 100000;
  Rng rng(SeedSpec{10, 0});
  for (int k = 0; k < n; ++k)
    if (laplacian_step(g, f, 0, AlphaParam(1.0), rng) == 1) ++to1;
  CHECK(std::abs(to1 / static_cast<double>(n) - 0.6) < 0.01);
}

TEST_CASE("large alpha concentrates on the max-weight neighbor") {
  auto g = FiniteGraph::cycle(5);
  std::vector<char> zero{1, 0, 0, 0, 0};
  auto f = dirichlet_solve(g, zero, 2);
  int to1 = 0;
  const int n = 20000;
  Rng rng(SeedSpec{11, 0});
  for (int k = 0; k < n; ++k)
    if (laplacian_step(g, f, 0, AlphaParam(8.0), rng) == 1) ++to1;
  // (1/2)^8 / ((1/2)^8 + (1/3)^8) ~ 0.96
  CHECK(to1 / static_cast<double>(n) > 0.93);
}

TEST_CASE("laplacian walk degenerate and symmetric cases") {
  Rng rng(SeedSpec{12, 0});
  auto path3 = FiniteGraph::path(3);
  for (int k = 0; k < 20; ++k) {
    Rng child = rng.fork();
    CHECK(laplacian_walk(path3, 0, 2, AlphaParam(1.0), child) ==
          std::vector<int>{0, 1, 2});
  }
  auto c4 = FiniteGraph::cycle(4);
  int upper = 0;
  const int n = 100000;
  for (int k = 0; k < n; ++k) {
    Rng child = rng.fork();
    auto p = laplacian_walk(c4, 0, 2, AlphaParam(1.0), child);
    if (p[1] == 1) ++upper;
  }
  CHECK(std::abs(upper / static_cast<double>(n) - 0.5) < 0.01);
  CHECK_THROWS_AS(laplacian_walk(c4, 1, 1, AlphaParam(1.0), rng),
                  std::invalid_argument);
}

TEST_CASE("laplacian walk on C5 reproduces the exact path law") {
  auto g = FiniteGraph::cycle(5);
  Rng rng(SeedSpec{13, 0});
  int clockwise = 0;
  const int n = 100000;
  for (int k = 0; k < n; ++k) {
    Rng child = rng.fork();
    auto p = laplacian_walk(g, 0, 2, AlphaParam(1.0), child);
    if (p.size() == 3) ++clockwise;  // (0,1,2)
  }
  CHECK(std::abs(clockwise / static_cast<double>(n) - 0.6) < 0.01);
}

TEST_CASE("complete_graph_pmf evaluates the closed formula") {
  auto p3 = complete_graph_pmf(3);
  REQUIRE(p3.size() == 3);
  CHECK(p3[0] == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(p3[1] == doctest::Approx(4.0 / 9).epsilon(1e-12));
  CHECK(p3[2] == doctest::Approx(2.0 / 9).epsilon(1e-12));

  auto p1 = complete_graph_pmf(1);
  REQUIRE(p1.size() == 1);
  CHECK(p1[0] == 1.0);

  for (int n : {2, 5, 17, 100}) {
    double total = 0;
    for (double v : complete_graph_pmf(n)) {
      CHECK(v >= 0.0);
      total += v;
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
  }
}

TEST_CASE("exact finite-n length law sums to 1 and matches the shift identity") {
  for (int n : {2, 3, 10, 50}) {
    auto q = lerw_length_pmf_exact(n);
    double total = 0;
    for (double v : q) total += v;
    CHECK(std::abs(total - 1.0) < 1e-12);
    auto pmf = complete_graph_pmf(n);
    CHECK(pmf[0] == doctest::Approx(1.0 / n).epsilon(1e-12));
    for (std::size_t j = 1; j < pmf.size(); ++j) {
      double expect = j - 1 < q.size() ? (1.0 - 1.0 / n) * q[j - 1] : 0.0;
      CHECK(pmf[j] == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("limit cdf endpoints and mean of the density") {
  CHECK(complete_graph_limit_cdf(0.0) == 0.0);
  CHECK(complete_graph_limit_cdf(50.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(complete_graph_limit_cdf(-0.1), std::invalid_argument);
  // mean of t e^{-t^2/2} via the trapezoid rule on the survival function
  double mean = 0, dt = 1e-4;
  for (double t = 0; t < 10; t += dt)
    mean += (1.0 - complete_graph_limit_cdf(t)) * dt;
  CHECK(mean == doctest::Approx(std::sqrt(M_PI / 2)).epsilon(1e-4));
}

TEST_CASE("alpha hazard sampler: N=2 always returns 2, alpha=1 matches the exact law") {
  Rng rng(SeedSpec{14, 0});
  for (int k = 0; k < 100; ++k)
    CHECK(complete_graph_alpha_length(2, AlphaParam(1.0), rng) == 2);

  // alpha=1 termination hazard with i path vertices is (i+1)/N: the exact law
  const std::int64_t N = 100;
  std::map<std::int64_t, double> emp;
  const int samples = 100000;
  for (int k = 0; k < samples; ++k)
    emp[complete_graph_alpha_length(N, AlphaParam(1.0), rng)] += 1.0 / samples;
  auto q = lerw_length_pmf_exact(N);
  std::map<std::int64_t, double> model;
  for (std::size_t j = 0; j < q.size(); ++j)
    model[static_cast<std::int64_t>(j) + 2] = q[j];
  CHECK(tv_distance(emp, model) < 0.01);
}

TEST_CASE("alpha=2 hazard sampler recovers the 1/(1+alpha) exponent") {
  Rng rng(SeedSpec{15, 0});
  std::vector<std::pair<double, double>> pts;
  for (std::int64_t N : {1000, 10000, 100000}) {
    double total = 0;
    const int samples = 4000;
    for (int k = 0; k < samples; ++k)
      total += static_cast<double>(complete_graph_alpha_length(N, AlphaParam(2.0), rng));
    pts.emplace_back(static_cast<double>(N), total / samples);
  }
  auto fit = exponent_fit(pts);
  CHECK(std::abs(fit.slope - 1.0 / 3) < 0.05);
}
