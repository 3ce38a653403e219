#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lerw/graph.hpp"
#include "lerw/lattice.hpp"
#include "lerw/rng.hpp"

namespace lerw {

// Streaming simple random walk on the torus. Keeps coordinates, the encoded
// index (updated incrementally), and optionally the wrapped displacement
// from an anchor vertex so ball tests cost O(d) integer ops per step.
class TorusWalk {
 public:
  TorusWalk(const TorusParams& t, const TorusPoint& start, Rng rng)
      : t_(t), pos_(start), idx_(encode(start, t)), rng_(rng) {}

  const TorusParams& params() const { return t_; }
  const TorusPoint& position() const { return pos_; }
  std::int64_t index() const { return idx_; }
  std::uint64_t step_count() const { return steps_; }

  std::int64_t step() {
    std::uint64_t dir = rng_.below(2 * static_cast<std::uint64_t>(t_.dim));
    int axis = static_cast<int>(dir >> 1);
    int sign = (dir & 1) ? -1 : +1;
    std::int32_t c = pos_.c[axis];
    if (sign > 0) {
      if (c == t_.side - 1) {
        pos_.c[axis] = 0;
        idx_ -= (t_.side - 1) * t_.stride[axis];
      } else {
        pos_.c[axis] = c + 1;
        idx_ += t_.stride[axis];
      }
    } else {
      if (c == 0) {
        pos_.c[axis] = static_cast<std::int32_t>(t_.side - 1);
        idx_ += (t_.side - 1) * t_.stride[axis];
      } else {
        pos_.c[axis] = c - 1;
        idx_ -= t_.stride[axis];
      }
    }
    last_axis_ = axis;
    last_sign_ = sign;
    ++steps_;
    return idx_;
  }

  int last_axis() const { return last_axis_; }
  int last_sign() const { return last_sign_; }

 private:
  TorusParams t_;
  TorusPoint pos_;
  std::int64_t idx_;
  Rng rng_;
  std::uint64_t steps_ = 0;
  int last_axis_ = -1, last_sign_ = 0;
};

// Uniform step over the other n-1 vertices of the complete graph K_n.
class CompleteGraphWalk {
 public:
  CompleteGraphWalk(std::int64_t n, std::int64_t start, Rng rng)
      : n_(n), cur_(start), rng_(rng) {
    if (n < 2) throw std::invalid_argument("complete graph needs n >= 2");
  }

  std::int64_t current() const { return cur_; }
  std::int64_t step() {
    std::int64_t r = static_cast<std::int64_t>(rng_.below(n_ - 1));
    cur_ = r + (r >= cur_ ? 1 : 0);
    return cur_;
  }

 private:
  std::int64_t n_, cur_;
  Rng rng_;
};

// Uniform step on an explicit small graph.
class GraphWalk {
 public:
  GraphWalk(const FiniteGraph& g, int start, Rng rng) : g_(&g), cur_(start), rng_(rng) {}

  int current() const { return cur_; }
  int step() {
    const auto& nb = g_->neighbors(cur_);
    cur_ = nb[rng_.below(nb.size())];
    return cur_;
  }

 private:
  const FiniteGraph* g_;
  int cur_;
  Rng rng_;
};

struct WalkResult {
  std::uint64_t length = 0;  // transitions emitted
  bool truncated = false;    // cap reached before hitting the target
};

// Streams a walk into `sink(vertex_id)` until the first visit to `target`
// (inclusive). sink receives the start vertex first. Default cap: 100 N^d.
template <class Walk, class Sink>
WalkResult walk_until_hit(Walk& walk, std::int64_t start_id, std::int64_t target,
                          std::uint64_t cap, Sink&& sink) {
  if (start_id == target)
    throw std::invalid_argument("walk_until_hit: start equals target");
  sink(start_id);
  WalkResult res;
  while (res.length < cap) {
    std::int64_t v = walk.step();
    ++res.length;
    sink(v);
    if (v == target) return res;
  }
  res.truncated = true;
  return res;
}

template <class Walk, class Sink>
WalkResult walk_fixed_length(Walk& walk, std::int64_t start_id, std::uint64_t t,
                             Sink&& sink) {
  sink(start_id);
  WalkResult res;
  while (res.length < t) {
    sink(walk.step());
    ++res.length;
  }
  return res;
}

inline std::uint64_t default_hit_cap(const TorusParams& t) {
  return 100ull * static_cast<std::uint64_t>(t.volume);
}

// Annulus stopping times of a walk around a ball B(v, r):
//   t_0 = 0, t_{2i+1} = first time >= t_{2i} on the inner boundary of
//   B(v, 2r), t_{2i} = first time >= t_{2i-1} on the inner boundary of
//   B(v, 4r). Radii are rationals (num/den), all tests exact.
struct StoppingTimeTape {
  std::vector<std::uint64_t> times;  // times[0] == 0
  TorusPoint anchor;
  std::int64_t r_num = 0, r_den = 1;
};

class AnnulusTracker {
 public:
  // Requires 0 < 8r <= N and the walk's start outside B(v, 2r).
  AnnulusTracker(const TorusParams& t, const TorusPoint& v, std::int64_t r_num,
                 std::int64_t r_den, const TorusPoint& start)
      : t_(t), v_(v), num_(r_num), den_(r_den) {
    if (r_num <= 0 || r_den <= 0)
      throw std::invalid_argument("annulus radius must be positive");
    if (8 * r_num > t.side * r_den)
      throw std::invalid_argument("annulus radius must satisfy 8r <= N");
    for (int i = 0; i < t_.dim; ++i) {
      std::int64_t diff = static_cast<std::int64_t>(start.c[i]) - v.c[i];
      if (diff > t_.side / 2) diff -= t_.side;
      if (diff < -t_.side / 2) diff += t_.side;
      delta_[i] = diff;
      d2_ += diff * diff;
    }
    if (inside(d2_, 2))
      throw std::invalid_argument(
          "annulus tracker: walk must start outside B(v,2r)");
    tape_.times.push_back(0);  // t_0
    tape_.anchor = v;
    tape_.r_num = r_num;
    tape_.r_den = r_den;
  }

  // Feed one transition of the walk (axis/sign as reported by TorusWalk).
  // Returns true if this step completed a stopping time.
  bool observe_step(int axis, int sign) {
    ++time_;
    std::int64_t d = delta_[axis] + sign;
    // balls with radius 4r < N/2 never wrap, but the walk itself may: fold
    // the displacement back into (-N/2, N/2]
    if (d > t_.side / 2) d -= t_.side;
    if (d < -(t_.side - 1) / 2) d += t_.side;
    d2_ += d * d - delta_[axis] * delta_[axis];
    delta_[axis] = d;

    bool odd_pending = (tape_.times.size() % 2) == 1;
    if (odd_pending) {
      // first entry into B(v,2r) necessarily lands on its inner boundary
      if (inside(d2_, 2)) {
        tape_.times.push_back(time_);
        return true;
      }
    } else {
      if (on_inner_boundary(4)) {
        tape_.times.push_back(time_);
        return true;
      }
    }
    return false;
  }

  std::uint64_t time() const { return time_; }
  const StoppingTimeTape& tape() const { return tape_; }
  std::int64_t dist2() const { return d2_; }
  std::size_t completed() const { return tape_.times.size() - 1; }

 private:
  bool inside(std::int64_t d2, std::int64_t mult) const {
    std::int64_t rn = mult * num_;
    return d2 * den_ * den_ <= rn * rn;
  }
  bool on_inner_boundary(std::int64_t mult) const {
    if (!inside(d2_, mult)) return false;
    for (int i = 0; i < t_.dim; ++i) {
      std::int64_t a = delta_[i] >= 0 ? delta_[i] : -delta_[i];
      if (!inside(d2_ + 2 * a + 1, mult)) return true;
    }
    return false;
  }

  TorusParams t_;
  TorusPoint v_;
  std::int64_t num_, den_;
  std::array<std::int64_t, kMaxDim> delta_{};
  std::int64_t d2_ = 0;
  std::uint64_t time_ = 0;
  StoppingTimeTape tape_;
};

// Convenience form over a stored trajectory.
inline StoppingTimeTape annulus_stopping_times(const std::vector<TorusPoint>& traj,
                                               const TorusParams& t,
                                               const TorusPoint& v,
                                               std::int64_t r_num,
                                               std::int64_t r_den = 1) {
  if (traj.empty()) throw std::invalid_argument("empty trajectory");
  AnnulusTracker tracker(t, v, r_num, r_den, traj[0]);
  for (std::size_t i = 1; i < traj.size(); ++i) {
    // recover the step direction from consecutive points
    int axis = -1, sign = 0;
    for (int a = 0; a < t.dim; ++a) {
      if (traj[i].c[a] != traj[i - 1].c[a]) {
        axis = a;
        std::int32_t diff = traj[i].c[a] - traj[i - 1].c[a];
        sign = (diff == 1 || diff == -(t.side - 1)) ? +1 : -1;
        break;
      }
    }
    if (axis < 0) throw std::invalid_argument("trajectory has a repeated vertex");
    tracker.observe_step(axis, sign);
  }
  return tracker.tape();
}

}  // namespace lerw
