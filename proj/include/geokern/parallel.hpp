#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>

#include <omp.h>

namespace geokern {

/// Hardware parallelism reported by the OpenMP runtime.
inline int available_threads() { return std::max(omp_get_max_threads(), 1); }

/// Runs body(i) for i in [0, count) on up to `threads` OpenMP threads with
/// dynamic scheduling. The first exception thrown by any iteration is
/// rethrown on the calling thread once the loop has finished.
template <class Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(threads, 1))
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace geokern
