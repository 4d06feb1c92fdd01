#include "pca/quadrature.hpp"

#include <stdexcept>

namespace pca {

std::vector<double> simpson_weights(double a, double b, int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("Simpson rule needs an even interval count");
  const double h = (b - a) / n;
  std::vector<double> w(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const double c = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    w[static_cast<std::size_t>(i)] = c * h / 3.0;
  }
  return w;
}

RadialRule annulus_simpson(double d_min, double d_max, int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("Simpson rule needs an even interval count");
  RadialRule r;
  if (d_max <= d_min) {
    r.x = {d_min};
    r.w = {1.0};
    return r;
  }
  const auto w = simpson_weights(d_min, d_max, n);
  const double h = (d_max - d_min) / n;
  const double norm = d_max * d_max - d_min * d_min;
  for (int i = 0; i <= n; ++i) {
    const double x = d_min + i * h;
    r.x.push_back(x);
    r.w.push_back(w[static_cast<std::size_t>(i)] * 2.0 * x / norm);
  }
  return r;
}

}  // namespace pca
