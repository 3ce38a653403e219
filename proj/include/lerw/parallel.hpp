#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace lerw {

// Runs fn(replica_index) for indices [0, n) over a worker pool and returns
// results ordered by index. All randomness must derive from the index, so
// the output is identical for any worker count or interleaving.
template <class Fn>
auto run_indexed(std::uint64_t n, int threads, Fn&& fn)
    -> std::vector<decltype(fn(std::uint64_t{0}))> {
  using T = decltype(fn(std::uint64_t{0}));
  std::vector<T> out(n);
  if (threads <= 1) {
    for (std::uint64_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::uint64_t i = next.fetch_add(1);
        if (i >= n) return;
        out[i] = fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

inline int default_thread_count() {
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace lerw
