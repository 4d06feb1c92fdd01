#include "pca/stats.hpp"

#include <cmath>

namespace pca {

Estimate summarize(const std::vector<double>& x) {
  Estimate e;
  e.n = x.size();
  if (x.empty()) return e;
  double s = 0.0;
  for (double v : x) s += v;
  e.mean = s / static_cast<double>(e.n);
  if (e.n > 1) {
    double ss = 0.0;
    for (double v : x) ss += (v - e.mean) * (v - e.mean);
    e.se = std::sqrt(ss / static_cast<double>(e.n - 1) / static_cast<double>(e.n));
  }
  return e;
}

}  // namespace pca
