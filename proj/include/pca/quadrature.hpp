#pragma once

#include <vector>

namespace pca {

// Nodes and weights for E[f(Z)] with Z the radius of a point uniform in the
// annulus [d_min, d_max]. Weights already include the density 2x/(d_max^2-d_min^2).
// n is the number of Simpson intervals (even). A degenerate annulus gives a
// single node of weight 1.
struct RadialRule {
  std::vector<double> x;
  std::vector<double> w;
};

RadialRule annulus_simpson(double d_min, double d_max, int n);

// Composite Simpson weights on [a, b] with n intervals.
std::vector<double> simpson_weights(double a, double b, int n);

}  // namespace pca
