#pragma once

#include <functional>

#include "pca/config.hpp"

namespace pca {

// Euclidean projection onto {x >= 0, sum x = s}.
Vec project_simplex(const Vec& y, double s);
// Euclidean projection onto {x >= 0, sum x <= budget}.
Vec project_capped_simplex(const Vec& y, double budget);
// Squared distance from y to {x >= 0, sum x <= budget}.
double capped_simplex_dist2(const Vec& y, double budget);

// Returns f(x) and writes the gradient.
using Objective = std::function<double(const Vec& x, Vec& grad)>;
using Projection = std::function<Vec(const Vec& y)>;

struct PgdOptions {
  double tol = 1e-8;
  int max_iter = 100000;
  double armijo = 1e-4;
};

struct PgdResult {
  Vec x;
  double value = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

// Projected gradient with Barzilai-Borwein steps and Armijo backtracking.
// `scale` is an optional diagonal preconditioner; the projection must be the
// one for the matching metric diag(scale)^-1. Stops when
// ||x - P(x - s*g/||s*g||_inf)||_inf < tol, which does not depend on the
// magnitude of the objective.
PgdResult projected_gradient(const Objective& f, const Projection& proj, Vec x0,
                             const PgdOptions& opt = {}, const Vec* scale = nullptr);

double pg_residual(const Vec& x, const Vec& g, const Projection& proj, const Vec* scale = nullptr);

// Minimizes a convex objective over {alpha >= 0, sum alpha <= budget}.
AttackVector solve_p1_numeric(const Objective& f, int K, const PgdOptions& opt = {},
                              double budget = 1.0);

}  // namespace pca
