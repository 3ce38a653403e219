#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "lerw/lattice.hpp"
#include "lerw/rng.hpp"
#include "lerw/walker.hpp"

using namespace lerw;

TEST_CASE("rng streams are deterministic and distinct per replica") {
  Rng a(SeedSpec{1, 0}), b(SeedSpec{1, 0}), c(SeedSpec{1, 1});
  bool same = true, differ = false;
  for (int k = 0; k < 10000; ++k) {
    std::uint64_t x = a.next_u64();
    same = same && (x == b.next_u64());
    differ = differ || (x != c.next_u64());
  }
  CHECK(same);
  CHECK(differ);
}

TEST_CASE("bounded sampling is in range and roughly uniform") {
  Rng rng(SeedSpec{2, 0});
  std::array<int, 7> counts{};
  for (int k = 0; k < 70000; ++k) ++counts[rng.below(7)];
  for (int v : counts) {
    CHECK(v > 9000);
    CHECK(v < 11000);
  }
  CHECK(rng.below(1) == 0);
}

TEST_CASE("torus steps are uniform over the 2d neighbors") {
  TorusParams t(4, 2);
  std::array<std::int64_t, 4> counts{};  // (axis, sign) cells
  Rng rng(SeedSpec{3, 0});
  TorusWalk walk(t, TorusPoint::of({0, 0}), rng);
  const int n = 1000000;
  for (int k = 0; k < n; ++k) {
    walk.step();
    counts[walk.last_axis() * 2 + (walk.last_sign() > 0 ? 0 : 1)]++;
  }
  for (auto c : counts)
    CHECK(std::abs(c / static_cast<double>(n) - 0.25) < 0.01);
}

TEST_CASE("torus walk stays on the lattice and updates its index incrementally") {
  TorusParams t(5, 3);
  Rng rng(SeedSpec{4, 0});
  TorusWalk walk(t, TorusPoint::of({4, 0, 2}), rng);
  TorusPoint prev = walk.position();
  for (int k = 0; k < 5000; ++k) {
    walk.step();
    CHECK(walk.index() == encode(walk.position(), t));
    CHECK(torus_distance2(prev, walk.position(), t) == 1);
    prev = walk.position();
  }
  CHECK(walk.step_count() == 5000);
}

TEST_CASE("identical seeds give identical trajectories") {
  TorusParams t(6, 4);
  Rng r1(SeedSpec{9, 5}), r2(SeedSpec{9, 5});
  TorusWalk w1(t, decode(0, t), r1), w2(t, decode(0, t), r2);
  for (int k = 0; k < 10000; ++k) CHECK(w1.step() == w2.step());
}

TEST_CASE("complete graph walk never stays put, N=3 is fair") {
  Rng rng(SeedSpec{5, 0});
  CompleteGraphWalk walk(3, 0, rng);
  std::array<std::int64_t, 3> counts{};
  std::int64_t prev = 0;
  const int n = 1000000;
  for (int k = 0; k < n; ++k) {
    std::int64_t v = walk.step();
    CHECK(v != prev);
    ++counts[v];
    prev = v;
  }
  // each vertex is entered from the other two equally often
  for (auto c : counts)
    CHECK(std::abs(c / static_cast<double>(n) - 1.0 / 3) < 0.005);
  CHECK_THROWS_AS(CompleteGraphWalk(1, 0, Rng(SeedSpec{0, 0})), std::invalid_argument);
}

TEST_CASE("walk_until_hit reaches the target and rejects start == target") {
  TorusParams t(4, 2);
  Rng rng(SeedSpec{6, 0});
  TorusWalk walk(t, decode(0, t), rng);
  std::vector<std::int64_t> traj;
  auto res = walk_until_hit(walk, 0, 7, default_hit_cap(t),
                            [&](std::int64_t v) { traj.push_back(v); });
  CHECK(!res.truncated);
  CHECK(traj.front() == 0);
  CHECK(traj.back() == 7);
  CHECK(traj.size() == res.length + 1);

  TorusWalk walk2(t, decode(0, t), Rng(SeedSpec{6, 1}));
  CHECK_THROWS_AS(walk_until_hit(walk2, 0, 0, 10, [](std::int64_t) {}),
                  std::invalid_argument);
}

TEST_CASE("cap exhaustion sets the truncation flag") {
  TorusParams t(32, 5);
  Rng rng(SeedSpec{7, 0});
  TorusWalk walk(t, decode(0, t), rng);
  std::int64_t far = encode(TorusPoint::of({16, 16, 16, 16, 16}), t);
  auto res = walk_until_hit(walk, 0, far, 10, [](std::int64_t) {});
  CHECK(res.truncated);
  CHECK(res.length == 10);
}

TEST_CASE("mean hitting time of a fixed target is Theta(N^d) on T_6^5") {
  TorusParams t(6, 5);
  std::int64_t target = encode(TorusPoint::of({3, 0, 0, 0, 0}), t);
  double total = 0;
  const int reps = 1000;
  for (int k = 0; k < reps; ++k) {
    Rng rng(SeedSpec{100, static_cast<std::uint64_t>(k)});
    TorusWalk walk(t, decode(0, t), rng);
    auto res = walk_until_hit(walk, 0, target, default_hit_cap(t), [](std::int64_t) {});
    REQUIRE(!res.truncated);
    total += static_cast<double>(res.length);
  }
  double mean = total / reps;
  CHECK(mean > 7776.0 / 3);
  CHECK(mean < 7776.0 * 3);
}

TEST_CASE("walk_fixed_length emits exactly t transitions") {
  TorusParams t(4, 2);
  std::vector<std::int64_t> traj;
  Rng rng(SeedSpec{8, 0});
  TorusWalk w(t, decode(0, t), rng);
  walk_fixed_length(w, 0, 0, [&](std::int64_t v) { traj.push_back(v); });
  CHECK(traj == std::vector<std::int64_t>{0});
  traj.clear();
  TorusWalk w2(t, decode(0, t), Rng(SeedSpec{8, 1}));
  walk_fixed_length(w2, 0, 5, [&](std::int64_t v) { traj.push_back(v); });
  CHECK(traj.size() == 6);
  for (std::size_t i = 1; i < traj.size(); ++i)
    CHECK(torus_distance2(decode(traj[i - 1], t), decode(traj[i], t), t) == 1);
}

TEST_CASE("annulus stopping times on the spec hand trajectory") {
  TorusParams t(32, 2);
  std::vector<TorusPoint> traj;
  // march from (8,0) to (4,0), then back out to (8,0)
  for (int x = 8; x >= 4; --x) traj.push_back(TorusPoint::of({x, 0}));
  for (int x = 5; x <= 8; ++x) traj.push_back(TorusPoint::of({x, 0}));
  auto tape = annulus_stopping_times(traj, t, TorusPoint::of({0, 0}), 2);
  REQUIRE(tape.times.size() == 3);
  CHECK(tape.times[0] == 0);
  CHECK(tape.times[1] == 4);  // first hit of the inner boundary of B(v,4)
  CHECK(tape.times[2] == 8);  // first return to the inner boundary of B(v,8)
}

TEST_CASE("annulus tracker rejects bad radii and inside starts") {
  TorusParams t(32, 2);
  TorusPoint v = TorusPoint::of({0, 0});
  CHECK_THROWS_AS(AnnulusTracker(t, v, 5, 1, TorusPoint::of({16, 0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(AnnulusTracker(t, v, 2, 1, TorusPoint::of({3, 0})),
                  std::invalid_argument);
  CHECK_NOTHROW(AnnulusTracker(t, v, 4, 1, TorusPoint::of({16, 16})));
}

TEST_CASE("trajectory never entering B(v,2r) leaves only t_0") {
  TorusParams t(32, 2);
  std::vector<TorusPoint> traj;
  for (int x = 16; x >= 10; --x) traj.push_back(TorusPoint::of({x, 0}));
  auto tape = annulus_stopping_times(traj, t, TorusPoint::of({0, 0}), 2);
  CHECK(tape.times == std::vector<std::uint64_t>{0});
}

TEST_CASE("stopping-time alternation lands on the right boundaries") {
  TorusParams t(24, 3);
  TorusPoint v = TorusPoint::of({0, 0, 0});
  Ball inner(v, 4, t), outer(v, 8, t);
  for (std::uint64_t rep = 0; rep < 20; ++rep) {
    Rng rng(SeedSpec{200, rep});
    TorusPoint start = TorusPoint::of({12, 12, 12});
    TorusWalk walk(t, start, rng);
    AnnulusTracker tracker(t, v, 2, 1, start);
    std::vector<std::int64_t> traj{walk.index()};
    while (tracker.completed() < 6 && tracker.time() < 2000000) {
      walk.step();
      traj.push_back(walk.index());
      tracker.observe_step(walk.last_axis(), walk.last_sign());
    }
    const auto& times = tracker.tape().times;
    for (std::size_t i = 1; i < times.size(); ++i) {
      CHECK(times[i] > times[i - 1]);
      TorusPoint p = decode(traj[times[i]], t);
      if (i % 2 == 1)
        CHECK(inner.classify(p) == BallRegion::inner_boundary);
      else
        CHECK(outer.classify(p) == BallRegion::inner_boundary);
    }
  }
}

TEST_CASE("inner-annulus crossing times have subexponential-looking tails") {
  // P(t_{j+1} - t_j > nu r^2) at nu=8 is at most the nu=4 value squared,
  // within sampling slack
  TorusParams t(16, 3);
  TorusPoint v = TorusPoint::of({0, 0, 0});
  std::vector<double> gaps;
  for (std::uint64_t rep = 0; rep < 400; ++rep) {
    Rng rng(SeedSpec{300, rep});
    TorusPoint start = TorusPoint::of({8, 8, 8});
    TorusWalk walk(t, start, rng);
    AnnulusTracker tracker(t, v, 2, 1, start);
    while (tracker.completed() < 8 && tracker.time() < 1000000) {
      walk.step();
      tracker.observe_step(walk.last_axis(), walk.last_sign());
    }
    const auto& times = tracker.tape().times;
    for (std::size_t i = 2; i < times.size(); i += 2)
      gaps.push_back(static_cast<double>(times[i] - times[i - 1]));
  }
  REQUIRE(gaps.size() > 500);
  double r2 = 4.0;
  auto tail = [&](double nu) {
    std::size_t n = 0;
    for (double g : gaps)
      if (g > nu * r2) ++n;
    return static_cast<double>(n) / gaps.size();
  };
  double p4 = tail(4), p8 = tail(8);
  CHECK(p8 <= p4 * p4 + 3 * std::sqrt(p4 * p4 / gaps.size()) + 0.02);
}
