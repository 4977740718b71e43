#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace gapcert {

// 0 or negative -> hardware concurrency (at least 1).
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, count) on up to `threads` workers.  Each index is
// processed exactly once and writes only its own output slot, so results are
// identical for any thread count.
template <class Fn>
void parallel_for_index(std::uint64_t count, int threads, Fn&& fn) {
  const int workers =
      static_cast<int>(std::min<std::uint64_t>(resolve_threads(threads),
                                               count == 0 ? 1 : count));
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const std::uint64_t begin = count * w / workers;
    const std::uint64_t end = count * (w + 1) / workers;
    pool.emplace_back([begin, end, &fn] {
      for (std::uint64_t i = begin; i < end; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace gapcert
