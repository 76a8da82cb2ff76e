#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace cicc {

/// Clamps a requested worker count to [1, hardware_concurrency].
int resolve_thread_count(int requested);

/// Runs body(i) for i in [0, count) split across `threads` workers. Each call
/// must write only to its own output slot; with per-index seed derivation the
/// result is then independent of the worker count and of scheduling.
template <typename Body>
void parallel_for_index(std::size_t count, int threads, Body&& body) {
  threads = resolve_thread_count(threads);
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, count);
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) body(i);
    });
  }
}

}  // namespace cicc
