#pragma once

#include <array>
#include <cstdint>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace lerw {

inline constexpr int kMaxDim = 10;

// Geometry of the discrete torus Z^d/(NZ)^d.
struct TorusParams {
  std::int64_t side = 0;  // N
  int dim = 0;            // d
  std::int64_t volume = 0;
  std::array<std::int64_t, kMaxDim> stride{};  // stride[0] most significant

  TorusParams() = default;
  TorusParams(std::int64_t N, int d) : side(N), dim(d) {
    if (N < 2) throw std::invalid_argument("torus side must be >= 2");
    if (d < 1 || d > kMaxDim) throw std::invalid_argument("torus dim out of range");
    volume = 1;
    for (int i = d - 1; i >= 0; --i) {
      stride[i] = volume;
      if (volume > std::numeric_limits<std::int64_t>::max() / N)
        throw std::invalid_argument("torus vertex count overflows index range");
      volume *= N;
    }
  }
};

struct TorusPoint {
  std::array<std::int32_t, kMaxDim> c{};

  static TorusPoint of(std::initializer_list<std::int32_t> coords) {
    TorusPoint p;
    int i = 0;
    for (auto v : coords) p.c[i++] = v;
    return p;
  }
  bool equals(const TorusPoint& o, int dim) const {
    for (int i = 0; i < dim; ++i)
      if (c[i] != o.c[i]) return false;
    return true;
  }
};

// Row-major mixed-radix index, coordinate 0 most significant.
inline std::int64_t encode(const TorusPoint& p, const TorusParams& t) {
  std::int64_t idx = 0;
  for (int i = 0; i < t.dim; ++i) idx += p.c[i] * t.stride[i];
  return idx;
}

inline TorusPoint decode(std::int64_t idx, const TorusParams& t) {
  TorusPoint p;
  for (int i = t.dim - 1; i >= 0; --i) {
    p.c[i] = static_cast<std::int32_t>(idx % t.side);
    idx /= t.side;
  }
  return p;
}

inline std::vector<TorusPoint> neighbors(const TorusPoint& p, const TorusParams& t) {
  std::vector<TorusPoint> out;
  out.reserve(2 * t.dim);
  for (int i = 0; i < t.dim; ++i) {
    for (int s : {+1, -1}) {
      TorusPoint q = p;
      q.c[i] = static_cast<std::int32_t>((q.c[i] + s + t.side) % t.side);
      out.push_back(q);
    }
  }
  return out;
}

// Squared l2 distance minimized over lattice shifts; exact integer arithmetic.
inline std::int64_t torus_distance2(const TorusPoint& v, const TorusPoint& w,
                                    const TorusParams& t) {
  std::int64_t d2 = 0;
  for (int i = 0; i < t.dim; ++i) {
    std::int64_t diff = std::llabs(static_cast<std::int64_t>(v.c[i]) - w.c[i]);
    diff = std::min(diff, t.side - diff);
    d2 += diff * diff;
  }
  return d2;
}

inline double torus_distance(const TorusPoint& v, const TorusPoint& w,
                             const TorusParams& t) {
  return std::sqrt(static_cast<double>(torus_distance2(v, w, t)));
}

// l1 distance mod 2. The parity of t - t_i + |w - R(t_i)|_1 decides
// reachability on the bipartite torus; no estimator depends on it, the
// helper is exposed for completeness.
inline int l1_parity(const TorusPoint& v, const TorusPoint& w, const TorusParams& t) {
  std::int64_t l1 = 0;
  for (int i = 0; i < t.dim; ++i) {
    std::int64_t diff = std::llabs(static_cast<std::int64_t>(v.c[i]) - w.c[i]);
    l1 += std::min(diff, t.side - diff);
  }
  return static_cast<int>(l1 & 1);
}

enum class BallRegion { interior, inner_boundary, outside };

// Radius is stored as a rational num/den so that radii like N*2^-i compare
// exactly against integer squared distances: p in B iff d2 * den^2 <= num^2.
class Ball {
 public:
  Ball(const TorusPoint& center, std::int64_t r_num, std::int64_t r_den,
       const TorusParams& t)
      : center_(center), num_(r_num), den_(r_den), params_(t) {
    if (r_den <= 0 || r_num < 0) throw std::invalid_argument("ball radius must be >= 0");
    // caller contract: the ball must not wrap around the torus (diameter <= N;
    // the min-over-shifts metric stays unambiguous at equality)
    if (2 * r_num > t.side * r_den)
      throw std::invalid_argument("ball radius too large: 2r must be <= N");
  }
  Ball(const TorusPoint& center, std::int64_t r, const TorusParams& t)
      : Ball(center, r, 1, t) {}

  const TorusPoint& center() const { return center_; }
  double radius() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  bool contains2(std::int64_t d2) const { return d2 * den_ * den_ <= num_ * num_; }
  bool contains(const TorusPoint& p) const {
    return contains2(torus_distance2(center_, p, params_));
  }

  BallRegion classify(const TorusPoint& p) const {
    if (!contains(p)) return BallRegion::outside;
    for (const auto& q : neighbors(p, params_))
      if (!contains(q)) return BallRegion::inner_boundary;
    return BallRegion::interior;
  }

 private:
  TorusPoint center_;
  std::int64_t num_, den_;
  TorusParams params_;
};

inline BallRegion ball_membership(const Ball& b, const TorusPoint& p) {
  return b.classify(p);
}

}  // namespace lerw
