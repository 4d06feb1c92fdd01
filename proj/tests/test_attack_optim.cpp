#include <gtest/gtest.h>

#include <cmath>

#include "common.hpp"
#include "pca/attack_optim.hpp"
#include "pca/quadrature.hpp"
#include "pca/rates.hpp"
#include "pca/simplex.hpp"

using namespace pca;
using pca::testing::reference_config;
using pca::testing::rel;

namespace {

P1Coefficients random_coefficients(Rng& rng, int K) {
  P1Coefficients c{Vec(K), Vec(K)};
  for (int k = 0; k < K; ++k) {
    c.A(k) = std::exp(8.0 * rng.uniform() - 2.0);
    c.B(k) = std::exp(6.0 * rng.uniform() - 3.0);
  }
  return c;
}

AttackVector random_simplex_point(Rng& rng, int K) {
  AttackVector a(K);
  for (int k = 0; k < K; ++k) a(k) = -std::log(rng.uniform());
  return a / a.sum();
}

// Single-point annulus; users differ only through pilot power.
SystemConfig degenerate_config(int K, bool distinct_pilots) {
  SystemConfig c = reference_config(64, K);
  c.D_min = c.D_max = c.D_maxJ = 200.0;
  if (distinct_pilots)
    for (int k = 0; k < K; ++k) c.P_pilot[static_cast<std::size_t>(k)] *= std::pow(1.7, k);
  c.validate();
  return c;
}

Topology fixed_topology(const SystemConfig& cfg, double d) {
  Topology t;
  t.z.assign(static_cast<std::size_t>(cfg.K), d);
  t.z_Jk.assign(static_cast<std::size_t>(cfg.K), d);
  t.z_J = d;
  return t;
}

}  // namespace

TEST(P1Coefficients, ThetaAndDistanceFormsAgree) {
  const SystemConfig cfg = reference_config();
  Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    const Topology topo = sample_topology(rng, cfg);
    const PowerAllocation pd = uniform_power(cfg);
    const P1Coefficients a = p1_coefficients(large_scale(topo, cfg), pd, cfg);
    const P1Coefficients b = p1_coefficients_from_distances(topo, pd, cfg);
    for (int k = 0; k < cfg.K; ++k) {
      ASSERT_LT(rel(a.A(k), b.A(k)), 1e-12);
      ASSERT_LT(rel(a.B(k), b.B(k)), 1e-12);
    }
  }
}

TEST(P1Coefficients, ObjectiveMatchesAsymptoticSumRate) {
  const SystemConfig cfg = reference_config();
  Rng rng(2);
  const LargeScale ls = large_scale(sample_topology(rng, cfg), cfg);
  const PowerAllocation pd = uniform_power(cfg);
  const AttackVector a = random_simplex_point(rng, cfg.K);
  EXPECT_LT(rel(p1_objective(p1_coefficients(ls, pd, cfg), a),
                asymptotic_rates(ls, a, pd, cfg).sum_rate),
            1e-12);
}

TEST(P1Coefficients, NoJammerPowerThrows) {
  SystemConfig cfg = reference_config();
  cfg.P_J = 0.0;
  Rng rng(3);
  const Topology topo = sample_topology(rng, cfg);
  EXPECT_THROW(p1_coefficients(large_scale(topo, cfg), uniform_power(cfg), cfg),
               std::invalid_argument);
}

TEST(P1, GradientMatchesFiniteDifference) {
  Rng rng(4);
  const P1Coefficients c = random_coefficients(rng, 5);
  const AttackVector a = random_simplex_point(rng, 5);
  Vec g;
  p1_objective(c, a, g);
  for (int k = 0; k < 5; ++k) {
    AttackVector ap = a, am = a;
    const double h = 1e-6;
    ap(k) += h;
    am(k) -= h;
    EXPECT_NEAR(g(k), (p1_objective(c, ap) - p1_objective(c, am)) / (2 * h), 1e-6 * std::abs(g(k)) + 1e-9);
  }
}

TEST(P1, SingleUserTakesWholeBudget) {
  Rng rng(5);
  const P1Coefficients c = random_coefficients(rng, 1);
  EXPECT_NEAR(solve_p1_closed_form(c)(0), 1.0, 1e-9);
}

TEST(P1, SymmetricUsersSplitEvenly) {
  for (int K : {2, 3, 10}) {
    const P1Coefficients c{Vec::Constant(K, 37.0), Vec::Constant(K, 0.4)};
    const AttackVector a = solve_p1_closed_form(c);
    for (int k = 0; k < K; ++k) EXPECT_NEAR(a(k), 1.0 / K, 1e-9);
  }
}

TEST(P1, ClosedFormMatchesNumeric) {
  Rng rng(6);
  for (int t = 0; t < 30; ++t) {
    const int K = 2 + static_cast<int>(rng.index(9));
    const P1Coefficients c = random_coefficients(rng, K);
    const AttackVector cf = solve_p1_closed_form(c);
    const Objective f = [&](const Vec& a, Vec& g) { return p1_objective(c, a, g); };
    const AttackVector nm = solve_p1_numeric(f, K);
    EXPECT_LT((cf - nm).cwiseAbs().maxCoeff(), 1e-5);
    EXPECT_LE(p1_objective(c, cf), p1_objective(c, nm) + 1e-9 * p1_objective(c, nm));
  }
}

TEST(P1, KktConditionsHold) {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const int K = 1 + static_cast<int>(rng.index(12));
    const P1Coefficients c = random_coefficients(rng, K);
    const P1Solution s = solve_p1_closed_form_full(c);
    ASSERT_NEAR(s.alpha.sum(), 1.0, 1e-9);
    for (int k = 0; k < K; ++k) {
      const double a = s.alpha(k) + c.B(k);
      const double marginal = c.A(k) / (a * (a + c.A(k)));
      if (s.alpha(k) > 1e-12)
        ASSERT_LT(rel(marginal, s.lambda), 1e-6);
      else
        ASSERT_LE(marginal, s.lambda * (1 + 1e-6));
    }
  }
}

TEST(P1, NeverBeatenByRandomFeasiblePoints) {
  const SystemConfig cfg = reference_config();
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const LargeScale ls = large_scale(sample_topology(rng, cfg), cfg);
    const P1Coefficients c = p1_coefficients(ls, uniform_power(cfg), cfg);
    const double best = p1_objective(c, solve_p1_closed_form(c));
    for (int s = 0; s < 1000; ++s) {
      AttackVector a = random_simplex_point(rng, cfg.K) * rng.uniform();
      ASSERT_GE(p1_objective(c, a), best - 1e-9 * best);
    }
  }
}

TEST(P1, TotalAttackDecreasesInMultiplier) {
  Rng rng(9);
  const P1Coefficients c = random_coefficients(rng, 6);
  double prev = 1e300;
  for (double lam = 1e-6; lam < 1e3; lam *= 3.0) {
    const double s = p1_alpha_at(c, lam).sum();
    EXPECT_LE(s, prev);
    prev = s;
  }
  EXPECT_EQ(prev, 0.0);
}

TEST(P1, BudgetIsRespected) {
  Rng rng(10);
  const P1Coefficients c = random_coefficients(rng, 7);
  const AttackVector half = solve_p1_closed_form(c, 0.5);
  const AttackVector big = solve_p1_closed_form(c, 4.0);
  EXPECT_NEAR(half.sum(), 0.5, 1e-9);
  EXPECT_NEAR(big.sum(), 4.0, 1e-8);
  EXPECT_LT(p1_objective(c, big), p1_objective(c, half));
  EXPECT_EQ(solve_p1_closed_form(c, 0.0), AttackVector::Zero(7));
}

TEST(P1, FullScaleCoefficientsSolve) {
  const SystemConfig cfg = reference_config(1000, 10, 750.0);
  Rng rng(11);
  for (int t = 0; t < 1000; ++t) {
    const LargeScale ls = large_scale(sample_topology(rng, cfg), cfg);
    const AttackVector a = solve_p1_closed_form(p1_coefficients(ls, uniform_power(cfg), cfg));
    ASSERT_NEAR(a.sum(), 1.0, 1e-9);
    ASSERT_GE(a.minCoeff(), 0.0);
  }
}

TEST(P1, RejectsBadCoefficients) {
  P1Coefficients c{Vec::Ones(2), Vec::Zero(2)};
  EXPECT_THROW(solve_p1_closed_form(c), std::invalid_argument);
  c.B = Vec::Ones(2);
  c.A(1) = std::nan("");
  EXPECT_THROW(solve_p1_closed_form(c), std::invalid_argument);
}

TEST(WaterFilling, EqualUsersGetEqualPower) {
  const SystemConfig cfg = degenerate_config(4, false);
  const LargeScale ls = large_scale(fixed_topology(cfg, 200.0), cfg);
  const PowerAllocation pd = water_filling(ls, AttackVector::Zero(4), cfg);
  for (int k = 0; k < 4; ++k) EXPECT_LT(rel(pd(k), cfg.P_A / 4), 1e-12);
}

TEST(WaterFilling, WeakUserIsCutOff) {
  SystemConfig cfg = reference_config(64, 2);
  cfg.P_A = 1.0;
  LargeScale ls;
  ls.theta = {1.0, 1e-4};
  ls.theta_J = 1.0;
  ls.theta_Jk = {1.0, 1.0};
  const PowerAllocation pd = water_filling(ls, AttackVector::Zero(2), cfg);
  EXPECT_NEAR(pd(0), 1.0, 1e-12);
  EXPECT_EQ(pd(1), 0.0);
}

TEST(WaterFilling, BeatsRandomAllocations) {
  const SystemConfig cfg = reference_config();
  Rng rng(12);
  for (int t = 0; t < 20; ++t) {
    const LargeScale ls = large_scale(sample_topology(rng, cfg), cfg);
    const AttackVector a = random_simplex_point(rng, cfg.K);
    const PowerAllocation pd = water_filling(ls, a, cfg);
    ASSERT_NEAR(pd.sum(), cfg.P_A, 1e-9 * cfg.P_A);
    const double best = asymptotic_rates(ls, a, pd, cfg).sum_rate;
    for (int s = 0; s < 500; ++s) {
      const PowerAllocation q = random_simplex_point(rng, cfg.K) * cfg.P_A;
      ASSERT_LE(asymptotic_rates(ls, a, q, cfg).sum_rate, best * (1 + 1e-12));
    }
  }
}

TEST(P2, GridMustBeEvenAndLargeEnough) {
  const SystemConfig cfg = reference_config(64, 3);
  const PowerAllocation pd = uniform_power(cfg);
  EXPECT_THROW(solve_p2(cfg, pd, 15), std::invalid_argument);
  EXPECT_THROW(solve_p2(cfg, pd, 6), std::invalid_argument);
}

TEST(P2, SymmetricUsersSplitEvenly) {
  const SystemConfig cfg = reference_config(256, 5);
  const AttackVector a = solve_p2(cfg, uniform_power(cfg), 32);
  for (int k = 0; k < 5; ++k) EXPECT_NEAR(a(k), 0.2, 1e-6);
}

TEST(P2, GridRefinementIsStable) {
  SystemConfig cfg = reference_config(256, 4);
  for (int k = 0; k < 4; ++k) cfg.P_pilot[static_cast<std::size_t>(k)] *= std::pow(3.0, k);
  PowerAllocation pd = uniform_power(cfg);
  pd(0) *= 1.5;
  pd(3) *= 0.5;
  const AttackVector a16 = solve_p2(cfg, pd, 16);
  const AttackVector a32 = solve_p2(cfg, pd, 32);
  EXPECT_LT((a16 - a32).cwiseAbs().maxCoeff(), 1e-4);
}

TEST(P2, DegenerateAnnulusReducesToKnownDistances) {
  const SystemConfig cfg = degenerate_config(4, true);
  const PowerAllocation pd = uniform_power(cfg);
  const AttackVector p2 = solve_p2(cfg, pd, 16);
  const LargeScale ls = large_scale(fixed_topology(cfg, 200.0), cfg);
  const AttackVector p1 = solve_p1_closed_form(p1_coefficients(ls, pd, cfg));
  EXPECT_GT((p1.array() - 0.25).abs().maxCoeff(), 0.01);
  EXPECT_LT((p2 - p1).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(P2, QuadratureMatchesMonteCarlo) {
  const SystemConfig cfg = reference_config(256, 3);
  const PowerAllocation pd = uniform_power(cfg);
  const AttackVector a = (AttackVector(3) << 0.5, 0.3, 0.2).finished();
  const double quad = p2_objective(cfg, pd, a, 128);
  Rng rng(13);
  const int n = 200000;
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Topology t = sample_topology(rng, cfg);
    v[static_cast<std::size_t>(i)] = asymptotic_rates(large_scale(t, cfg), a, pd, cfg).sum_rate;
  }
  const Estimate mc = summarize(v);
  EXPECT_LT(std::abs(quad - mc.mean), 4.0 * mc.se);
}

TEST(P2, GradientMatchesFiniteDifference) {
  const SystemConfig cfg = reference_config(256, 3);
  const PowerAllocation pd = uniform_power(cfg);
  const AttackVector a = (AttackVector(3) << 0.5, 0.3, 0.2).finished();
  Vec g;
  p2_objective(cfg, pd, a, 32, &g);
  for (int k = 0; k < 3; ++k) {
    AttackVector ap = a, am = a;
    ap(k) += 1e-5;
    am(k) -= 1e-5;
    const double fd = (p2_objective(cfg, pd, ap, 32) - p2_objective(cfg, pd, am, 32)) / 2e-5;
    EXPECT_LT(rel(g(k), fd), 1e-5);
  }
}

TEST(P2, NoJammerPowerMeansNoAttack) {
  SystemConfig cfg = reference_config(64, 3);
  cfg.P_J = 0.0;
  EXPECT_EQ(solve_p2(cfg, uniform_power(cfg), 16), AttackVector::Zero(3));
}

TEST(GaussSeidel, NoJammerGivesWaterFilling) {
  SystemConfig cfg = reference_config();
  cfg.P_J = 0.0;
  Rng rng(14);
  const Topology topo = sample_topology(rng, cfg);
  const GameState st = solve_p3_gauss_seidel(cfg, topo);
  EXPECT_EQ(st.alpha, AttackVector::Zero(cfg.K));
  EXPECT_LT((st.pd - water_filling(large_scale(topo, cfg), st.alpha, cfg)).norm(), 1e-9 * cfg.P_A);
}

// Neither player gains much by deviating from the returned point.
TEST(GaussSeidel, ReturnsApproximateSaddlePoint) {
  const SystemConfig cfg = reference_config();
  Rng rng(15);
  for (int t = 0; t < 50; ++t) {
    const Topology topo = sample_topology(rng, cfg);
    const LargeScale ls = large_scale(topo, cfg);
    const GameState st = solve_p3_gauss_seidel(cfg, topo);
    ASSERT_NEAR(st.alpha.sum(), 1.0, 1e-9);
    ASSERT_NEAR(st.pd.sum(), cfg.P_A, 1e-6 * cfg.P_A);
    ASSERT_GE(st.pd.minCoeff(), 0.0);
    const double bs = asymptotic_rates(ls, st.alpha, water_filling(ls, st.alpha, cfg), cfg).sum_rate;
    const double att =
        p1_objective(p1_coefficients(ls, st.pd, cfg),
                     solve_p1_closed_form(p1_coefficients(ls, st.pd, cfg)));
    ASSERT_LE(bs - st.value, 1e-3 * st.value);
    ASSERT_GE(att, st.value - 1e-9 * st.value);
  }
}

TEST(GaussSeidel, BestResponseModeReportsTraceOnFailure) {
  const SystemConfig cfg = reference_config();
  Rng rng(16);
  const Topology topo = sample_topology(rng, cfg);
  GameOptions opt;
  opt.method = GameMethod::BestResponse;
  opt.max_iter = 2;
  opt.tol = 1e-300;
  try {
    solve_p3_gauss_seidel(cfg, topo, opt);
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.trace().size(), 2u);
  }
  opt.tol = 0.0;
  EXPECT_THROW(solve_p3_gauss_seidel(cfg, topo, opt), std::invalid_argument);
}

TEST(Evpi, ZeroWhenDistancesAreKnown) {
  const SystemConfig cfg = degenerate_config(4, false);
  const Estimate e = evpi(cfg, uniform_power(cfg), 20, Rng(17), 16);
  EXPECT_LT(std::abs(e.mean), 1e-6);
}

TEST(Evpi, KnowingTheTopologyHelpsTheAttacker) {
  const SystemConfig cfg = reference_config();
  const Estimate e = evpi(cfg, uniform_power(cfg), 200, Rng(18), 32);
  EXPECT_GT(e.mean, 0.0);
  EXPECT_EQ(e.n, 200u);
}
