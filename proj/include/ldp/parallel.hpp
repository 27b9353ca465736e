#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace ldp {

// Runs fn(i) for i in [0, count) on up to `workers` threads (0 = hardware
// default).  Work is split into contiguous blocks; each fn(i) must write only
// to slot i of preallocated output, so the result is identical for any worker
// count.  The first exception thrown by any worker is rethrown.
inline void parallel_for(std::size_t count, int workers,
                         const std::function<void(std::size_t)>& fn) {
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t n_threads = workers > 0 ? static_cast<std::size_t>(workers)
                                      : (hw > 0 ? hw : 1);
  n_threads = std::min(n_threads, count);
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::size_t block = (count + n_threads - 1) / n_threads;
  for (std::size_t t = 0; t < n_threads; ++t) {
    std::size_t begin = t * block;
    std::size_t end = std::min(count, begin + block);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::scoped_lock lk(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace ldp
