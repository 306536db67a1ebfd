#pragma once

#include <algorithm>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace floq {

// Number of worker threads to use: `requested` if positive, otherwise the
// hardware concurrency (at least 1).
inline int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Run body(i) for i in [0, count) on `threads` workers with static chunking.
// Each index writes only its own preallocated output slot, so results are
// identical to the serial order regardless of thread count.  The first
// exception (lowest starting chunk) is rethrown after all workers join.
inline void parallel_for(int count, int threads,
                         const std::function<void(int)>& body) {
  if (count <= 0) return;
  int n_threads = std::min(resolve_thread_count(threads), count);
  if (n_threads <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_threads));
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(n_threads));
  int chunk = (count + n_threads - 1) / n_threads;
  for (int t = 0; t < n_threads; ++t) {
    int begin = t * chunk;
    int end = std::min(count, begin + chunk);
    workers.emplace_back([&body, &errors, t, begin, end]() {
      try {
        for (int i = begin; i < end; ++i) body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

} // namespace floq
