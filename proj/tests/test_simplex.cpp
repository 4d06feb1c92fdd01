#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "pca/config.hpp"
#include "pca/rng.hpp"
#include "pca/simplex.hpp"

using namespace pca;

namespace {

Vec random_vec(Rng& rng, int n, double scale) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = scale * (2.0 * rng.uniform() - 1.0);
  return v;
}

Vec random_feasible(Rng& rng, int n, double budget) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = -std::log(rng.uniform());
  return v / v.sum() * budget * rng.uniform();
}

}  // namespace

TEST(Projection, ExactSimplexSumsAndIsNonnegative) {
  Rng rng(1);
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + static_cast<int>(rng.index(20));
    const Vec p = project_simplex(random_vec(rng, n, 3.0), 0.7);
    ASSERT_GE(p.minCoeff(), 0.0);
    ASSERT_NEAR(p.sum(), 0.7, 1e-12);
  }
}

// y - P(y) must have nonpositive inner product with z - P(y) for every feasible z.
TEST(Projection, CappedSimplexVariationalInequality) {
  Rng rng(2);
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + static_cast<int>(rng.index(12));
    const Vec y = random_vec(rng, n, 2.0);
    const Vec p = project_capped_simplex(y, 1.0);
    ASSERT_GE(p.minCoeff(), 0.0);
    ASSERT_LE(p.sum(), 1.0 + 1e-12);
    for (int s = 0; s < 50; ++s) {
      const Vec z = random_feasible(rng, n, 1.0);
      ASSERT_LE((y - p).dot(z - p), 1e-12);
    }
    EXPECT_NEAR(capped_simplex_dist2(y, 1.0), (y - p).squaredNorm(), 1e-12);
  }
}

TEST(Projection, TinyBudgetStillSumsToBudget) {
  const Vec y = (Vec(3) << 2.43, 1.66, 0.32).finished();
  for (double s : {1e-16, 1e-300, 3e-12}) {
    const Vec p = project_capped_simplex(y, s);
    EXPECT_LE(p.sum(), s * (1 + 1e-12));
    EXPECT_GE(p.minCoeff(), 0.0);
  }
}

TEST(Projection, FeasiblePointIsFixed) {
  Rng rng(3);
  const Vec z = random_feasible(rng, 8, 1.0);
  EXPECT_LT((project_capped_simplex(z, 1.0) - z).norm(), 1e-15);
}

TEST(Projection, NegativeOrthantGoesToOrigin) {
  EXPECT_EQ(project_capped_simplex(Vec::Constant(5, -0.3), 1.0), Vec::Zero(5));
}

TEST(Pgd, LinearObjectivePicksCheapestVertex) {
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + static_cast<int>(rng.index(8));
    Vec c(n);
    for (int i = 0; i < n; ++i) c(i) = -1.0 - i - 0.5 * rng.uniform();
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), std::mt19937_64(rng.key()));
    Vec cp(n);
    for (int i = 0; i < n; ++i) cp(i) = c(perm[static_cast<std::size_t>(i)]);
    Eigen::Index best;
    cp.minCoeff(&best);
    const Objective f = [&](const Vec& x, Vec& g) {
      g = cp;
      return cp.dot(x);
    };
    const Vec x = solve_p1_numeric(f, n);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(x(i), i == best ? 1.0 : 0.0, 1e-8);
  }
}

TEST(Pgd, InteriorQuadraticMinimizer) {
  Rng rng(5);
  const Vec p = random_feasible(rng, 6, 0.8);
  const Objective f = [&](const Vec& x, Vec& g) {
    g = 2.0 * (x - p);
    return (x - p).squaredNorm();
  };
  EXPECT_LT((solve_p1_numeric(f, 6) - p).cwiseAbs().maxCoeff(), 1e-7);
}

TEST(Pgd, WeightedQuadraticKkt) {
  const Vec w = (Vec(3) << 1.0, 100.0, 0.01).finished();
  const Vec target = (Vec(3) << 0.6, 0.6, -0.2).finished();
  const Objective f = [&](const Vec& x, Vec& g) {
    g = 2.0 * w.cwiseProduct(x - target);
    return w.dot((x - target).cwiseAbs2());
  };
  const Projection proj = [](const Vec& y) { return project_capped_simplex(y, 1.0); };
  const PgdResult plain = projected_gradient(f, proj, Vec::Zero(3));
  EXPECT_LT(plain.residual, 1e-8);
  // Oracle: KKT with sum = 1 and x_3 = 0 gives a weighted split.
  // w1 (x1 - .6) = w2 (x2 - .6), x1 + x2 = 1
  const double x2 = (0.4 * w(0) + 0.6 * w(1)) / (w(0) + w(1));
  EXPECT_NEAR(plain.x(1), x2, 1e-6);
  EXPECT_NEAR(plain.x(0), 1.0 - x2, 1e-6);
  EXPECT_NEAR(plain.x(2), 0.0, 1e-9);
}

TEST(Pgd, IterationCapThrowsWithMessage) {
  const Objective f = [](const Vec& x, Vec& g) {
    g = Vec::Zero(x.size());
    g(0) = 4.0 * std::pow(x(0) - 0.3, 3);
    g(1) = 1e-3 * std::cos(50.0 * x(1));
    return std::pow(x(0) - 0.3, 4) + 2e-5 * std::sin(50.0 * x(1));
  };
  PgdOptions opt;
  opt.max_iter = 3;
  opt.tol = 1e-14;
  try {
    solve_p1_numeric(f, 2, opt);
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_FALSE(std::string(e.what()).empty());
  }
}

TEST(Pgd, ResidualIsScaleFree) {
  const Projection proj = [](const Vec& y) { return project_capped_simplex(y, 1.0); };
  const Vec x = (Vec(3) << 0.2, 0.3, 0.1).finished();
  const Vec g = (Vec(3) << 1.0, -2.0, 0.5).finished();
  EXPECT_NEAR(pg_residual(x, g, proj), pg_residual(x, 1e9 * g, proj), 1e-15);
}
