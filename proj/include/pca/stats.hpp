#pragma once

#include <cstddef>
#include <vector>

namespace pca {

struct Estimate {
  double mean = 0.0;
  double se = 0.0;  // standard error of the mean
  std::size_t n = 0;
};

// Two-pass mean and standard error, summed in index order.
Estimate summarize(const std::vector<double>& x);

}  // namespace pca
