#pragma once

#include <vector>

#include "pca/channel.hpp"
#include "pca/config.hpp"
#include "pca/parallel.hpp"
#include "pca/rng.hpp"
#include "pca/simplex.hpp"
#include "pca/stats.hpp"

namespace pca {

struct ScenarioSet {
  int T = 0;
  int N = 0;
  int K = 0;
  std::vector<Eigen::MatrixXd> gJk_abs2;  // T entries of N x K |g_Jk^(i)|^2
};

ScenarioSet build_scenarios(Rng rng, int N, int K, int T);
// First n antennas of every scenario.
ScenarioSet restrict_antennas(const ScenarioSet& s, int n);

struct HybridPolicy {
  AttackVector alpha;
  std::vector<Vec> beta;  // T entries of N fractions
  double objective = 0.0;
  int iterations = 0;
};

struct HybridOptions {
  double tol = 1e-8;
  int max_iter = 20000;
  bool attack_pilots = true;  // false fixes alpha = 0
  bool jam_data = true;       // false fixes beta = 0
  Execution exec = Execution::Parallel;
};

double p6_objective(const SystemConfig& cfg, const LargeScale& ls, const PowerAllocation& pd,
                    const ScenarioSet& s, const HybridPolicy& p);

// Checks t_p sum(alpha) + t_d sum(beta_t) <= t_p + t_d for all t, with slack `tol`.
bool hybrid_feasible(const SystemConfig& cfg, const HybridPolicy& p, double tol = 1e-9);

// Exact projection onto the coupled budget set in the metric
// ||alpha - a||^2 + w_beta * sum_t ||beta_t - b_t||^2.
HybridPolicy project_hybrid(const SystemConfig& cfg, const AttackVector& a,
                            const std::vector<Vec>& b, double w_beta, bool attack_pilots,
                            bool jam_data);

HybridPolicy solve_p6_saa(const SystemConfig& cfg, const Topology& topo, const PowerAllocation& pd,
                          const ScenarioSet& s, const HybridOptions& opt = {});

// Fixed alpha; beta re-optimized per fresh scenario. Returns sum-rate statistics.
Estimate evaluate_policy_out_of_sample(const SystemConfig& cfg, const Topology& topo,
                                       const PowerAllocation& pd, const AttackVector& alpha,
                                       const ScenarioSet& fresh, const HybridOptions& opt = {});

}  // namespace pca
