#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace haardist {

/// Run fn(i) for i in [0, count). Results must be written to disjoint slots;
/// the partition into threads never changes the outcome.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

/// Thread count resolution: explicit flag, else HAARDIST_THREADS, else all cores.
int resolve_threads(int requested);

}  // namespace haardist
