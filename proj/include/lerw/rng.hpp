#pragma once

#include <cstdint>
#include <string_view>

namespace lerw {

// Identifies the RNG algorithm in result files. Bump when the stream
// derivation or the generator itself changes.
inline constexpr std::string_view kRngAlgorithm = "splitmix64-v1";

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// (master_seed, replica_index) -> independent stream. The derivation is a
// fixed function of the pair, so replicas are reproducible in isolation and
// identical across platforms (only uint64 arithmetic is used).
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t replica_index = 0;

  std::uint64_t stream_key() const {
    return mix64(master_seed ^ mix64(replica_index * kGolden + 1));
  }
};

// Counter-based generator: output i is mix64(key + i*golden), realized as a
// running state. Cheap to fork (splitmix-style) and trivially seekable.
class Rng {
 public:
  explicit Rng(std::uint64_t key) : state_(key) {}
  explicit Rng(const SeedSpec& s) : state_(s.stream_key()) {}

  std::uint64_t next_u64() {
    state_ += kGolden;
    return mix64(state_);
  }

  // Unbiased uniform in [0, n), n >= 1. Lemire multiply-shift with rejection;
  // platform independent.
  std::uint64_t below(std::uint64_t n) {
    __uint128_t m = static_cast<__uint128_t>(next_u64()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      std::uint64_t threshold = (0 - n) % n;
      while (lo < threshold) {
        m = static_cast<__uint128_t>(next_u64()) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Derive an independent child stream (used for nested randomness such as
  // per-replica target choice).
  Rng fork() { return Rng(mix64(next_u64() ^ kGolden)); }

 private:
  std::uint64_t state_;
};

}  // namespace lerw
