#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace stopred::detail {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(chunk_index, lo, hi) over a deterministic partition of [0, total)
// into `threads` contiguous ranges. The partition depends only on `total` and
// `threads`, never on scheduling, so per-chunk results can be merged in chunk
// order to keep the output reproducible.
template <typename Fn>
void parallel_chunks(std::uint64_t total, int threads, Fn&& fn) {
  threads = std::max(1, threads);
  std::uint64_t n_chunks = std::min<std::uint64_t>(threads, total == 0 ? 1 : total);
  if (n_chunks <= 1) {
    fn(0, std::uint64_t{0}, total);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(n_chunks);
  std::uint64_t base = total / n_chunks, rem = total % n_chunks, lo = 0;
  for (std::uint64_t c = 0; c < n_chunks; ++c) {
    std::uint64_t hi = lo + base + (c < rem ? 1 : 0);
    pool.emplace_back([&fn, c, lo, hi] { fn(static_cast<int>(c), lo, hi); });
    lo = hi;
  }
  for (auto& th : pool) th.join();
}

}  // namespace stopred::detail
