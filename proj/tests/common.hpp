#pragma once

#include <cmath>

#include "pca/channel.hpp"
#include "pca/config.hpp"
#include "pca/harness.hpp"

namespace pca::testing {

// 46/20/30 dBm powers, 10..750 m annulus, L = 10.
inline SystemConfig reference_config(int M = 256, int K = 10, double D_maxJ = 250.0) {
  ExperimentSpec spec;
  spec.M = M;
  spec.K = K;
  spec.D_maxJ = D_maxJ;
  SystemConfig c = make_system(spec);
  c.validate();
  return c;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace pca::testing
