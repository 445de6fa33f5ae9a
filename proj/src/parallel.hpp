#ifndef TREECLUST_PARALLEL_HPP
#define TREECLUST_PARALLEL_HPP

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace treeclust {

inline int resolve_thread_count(int threads) {
  if (threads > 0) return threads;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(begin, end) over a static partition of [0, n). threads == 1 runs
// inline on the calling thread.
template <typename Fn>
void parallel_for(std::int64_t n, int threads, Fn&& fn) {
  threads = resolve_thread_count(threads);
  if (n <= 0) return;
  if (threads == 1 || n == 1) {
    fn(std::int64_t{0}, n);
    return;
  }
  if (threads > n) threads = static_cast<int>(n);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::int64_t chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    std::int64_t begin = t * chunk;
    std::int64_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace treeclust

#endif
