#pragma once

#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fluctlab {

// Effective worker count: FLUCTLAB_WORKERS overrides the requested value.
int resolve_workers(int requested);

// Runs fn(t) for t in [0, trials).  Workers own disjoint contiguous chunks;
// fn must only write trial-indexed slots, so results are identical for any
// worker count.  The first worker exception is rethrown on the caller.
template <class Fn>
void for_each_trial(std::int64_t trials, int workers, Fn&& fn) {
  if (trials <= 0) return;
  if (workers <= 1 || trials == 1) {
    for (std::int64_t t = 0; t < trials; ++t) fn(t);
    return;
  }
  const auto w = static_cast<std::int64_t>(workers) < trials ? static_cast<std::int64_t>(workers)
                                                             : trials;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(w));
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (std::int64_t k = 0; k < w; ++k) {
    const std::int64_t begin = trials * k / w;
    const std::int64_t end = trials * (k + 1) / w;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::int64_t t = begin; t < end; ++t) fn(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace fluctlab
