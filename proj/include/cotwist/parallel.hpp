#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace cotwist {

/// Splits [0, ntasks) into `nworkers` contiguous ranges and calls
/// fun(worker, begin, end) for each. Worker w always receives the w-th range,
/// so results stored per worker can be merged in enumeration order.
template <class Function>
void parallelize(std::size_t ntasks, int nworkers, Function fun) {
  if (nworkers < 1) nworkers = 1;
  if (ntasks == 0) return;
  std::size_t nw = static_cast<std::size_t>(nworkers);
  if (nw > ntasks) nw = ntasks;
  if (nw == 1) {
    fun(std::size_t{0}, std::size_t{0}, ntasks);
    return;
  }
  const std::size_t base = ntasks / nw, extra = ntasks % nw;
  std::vector<std::exception_ptr> errors(nw);
#if defined(_OPENMP)
#pragma omp parallel for num_threads(static_cast<int>(nw)) schedule(static, 1)
#endif
  for (std::size_t w = 0; w < nw; ++w) {
    const std::size_t begin = w * base + (w < extra ? w : extra);
    const std::size_t end = begin + base + (w < extra ? 1 : 0);
    try {
      fun(w, begin, end);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

inline int available_workers() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace cotwist
