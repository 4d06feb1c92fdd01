#include "pca/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace pca {

Vec project_simplex(const Vec& y, double s) {
  const auto n = y.size();
  if (s <= 0.0) return Vec::Zero(n);
  std::vector<double> u(y.data(), y.data() + n);
  std::sort(u.begin(), u.end(), std::greater<>());
  // the largest entry is always active; checking it in floating point can fail
  // when s is tiny compared to it
  double cum = u[0], shift = u[0] - s;
  for (Eigen::Index j = 1; j < n; ++j) {
    cum += u[static_cast<std::size_t>(j)];
    const double t = (cum - s) / static_cast<double>(j + 1);
    if (u[static_cast<std::size_t>(j)] - t > 0.0) shift = t;
  }
  return (y.array() - shift).cwiseMax(0.0).matrix();
}

Vec project_capped_simplex(const Vec& y, double budget) {
  Vec x = y.cwiseMax(0.0);
  if (x.sum() <= budget) return x;
  return project_simplex(y, budget);
}

double capped_simplex_dist2(const Vec& y, double budget) {
  return (y - project_capped_simplex(y, budget)).squaredNorm();
}

double pg_residual(const Vec& x, const Vec& g, const Projection& proj, const Vec* scale) {
  const Vec dg = scale ? Vec(scale->cwiseProduct(g)) : g;
  const double m = dg.lpNorm<Eigen::Infinity>();
  if (!(m > 0.0)) return 0.0;
  return (x - proj(x - dg / m)).lpNorm<Eigen::Infinity>();
}

PgdResult projected_gradient(const Objective& f, const Projection& proj, Vec x0,
                             const PgdOptions& opt, const Vec* scale) {
  const auto n = x0.size();
  const Vec D = scale ? *scale : Vec::Ones(n);
  PgdResult r;
  r.x = proj(x0);
  Vec g(n), gn(n);
  r.value = f(r.x, g);
  double t = 1.0 / std::max(D.cwiseProduct(g).lpNorm<Eigen::Infinity>(), 1e-300);
  std::vector<double> trace;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (r.iterations = 0; r.iterations < opt.max_iter; ++r.iterations) {
    r.residual = pg_residual(r.x, g, proj, &D);
    if (r.residual < opt.tol) return r;
    if (trace.size() < 64) trace.push_back(r.residual);
    const Vec dg = D.cwiseProduct(g);
    double step = t;
    bool accepted = false;
    Vec xn;
    double fn = 0.0;
    for (int bt = 0; bt < 200; ++bt) {
      xn = proj(r.x - step * dg);
      const Vec d = xn - r.x;
      fn = f(xn, gn);
      // allow rounding noise so progress continues at the accuracy floor
      if (fn <= r.value + opt.armijo * g.dot(d) + 8.0 * eps * std::abs(r.value)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      std::ostringstream os;
      os << "projected gradient: line search failed at iteration " << r.iterations
         << ", residual " << r.residual;
      throw SolverError(os.str(), trace);
    }
    const Vec s = xn - r.x;
    const Vec y = gn - g;
    const double sy = s.dot(y);
    const double sDs = s.cwiseQuotient(D).dot(s);
    t = sy > 0.0 ? sDs / sy : 4.0 * step;
    t = std::clamp(t, 1e-30, 1e30);
    r.x = xn;
    r.value = fn;
    g = gn;
  }
  r.residual = pg_residual(r.x, g, proj, &D);
  if (r.residual < opt.tol) return r;
  std::ostringstream os;
  os << "projected gradient: no convergence after " << opt.max_iter << " iterations, residual "
     << r.residual;
  throw SolverError(os.str(), trace);
}

AttackVector solve_p1_numeric(const Objective& f, int K, const PgdOptions& opt, double budget) {
  const Projection proj = [budget](const Vec& y) { return project_capped_simplex(y, budget); };
  return projected_gradient(f, proj, Vec::Constant(K, budget / K), opt).x;
}

}  // namespace pca
