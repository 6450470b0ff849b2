#pragma once

#include <cstddef>
#include <exception>

namespace arbor {

// Runs task(i) for i < n, on OpenMP threads when parallel is set. Tasks must
// write only to their own slot. The first exception is rethrown afterwards.
template <class F>
void parallel_for(std::size_t n, bool parallel, F&& task) {
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::size_t i = 0; i < n; ++i) {
    try {
      task(i);
    } catch (...) {
#pragma omp critical(arbor_parallel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace arbor
