#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace pca {

// Serial is the reference path; Parallel must produce identical results.
enum class Execution { Serial, Parallel };

// Runs f(i) for i in [0, n). Results must be written to index-owned slots so
// that the outcome does not depend on scheduling. The exception raised by the
// lowest failing index is rethrown after the loop.
template <class F>
void for_each_index(std::size_t n, Execution ex, F&& f) {
  std::vector<std::exception_ptr> errors(n);
  if (ex == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      try {
        f(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace pca
