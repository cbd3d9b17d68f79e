#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace diolab {

/// Runs fn(begin, end) over a contiguous partition of [0, n). Intended for
/// reductions that are exact (integer counts, rationals), where any
/// partition yields bit-identical totals; callers must not fold
/// floating-point values across chunks.
template <typename Fn>
void parallel_chunks(std::int64_t n, unsigned threads, Fn&& fn) {
  if (threads <= 1 || n < 2) {
    if (n > 0) fn(std::int64_t{0}, n);
    return;
  }
  auto t = static_cast<std::int64_t>(threads);
  if (t > n) t = n;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(t));
  std::int64_t chunk = (n + t - 1) / t;
  for (std::int64_t c = 0; c < t; ++c) {
    std::int64_t b = c * chunk;
    std::int64_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&fn, b, e] { fn(b, e); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace diolab
