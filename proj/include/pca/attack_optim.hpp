#pragma once

#include <vector>

#include "pca/channel.hpp"
#include "pca/config.hpp"
#include "pca/parallel.hpp"
#include "pca/rng.hpp"
#include "pca/stats.hpp"

namespace pca {

// Sum rate as sum_k log2(1 + A_k/(alpha_k + B_k)).
struct P1Coefficients {
  Vec A;
  Vec B;
};

P1Coefficients p1_coefficients(const LargeScale& ls, const PowerAllocation& pd,
                               const SystemConfig& cfg);
// Same coefficients written with distances only.
P1Coefficients p1_coefficients_from_distances(const Topology& topo, const PowerAllocation& pd,
                                              const SystemConfig& cfg);

double p1_objective(const P1Coefficients& c, const AttackVector& alpha);
double p1_objective(const P1Coefficients& c, const AttackVector& alpha, Vec& grad);

// Stationary point of the Lagrangian for a given multiplier.
AttackVector p1_alpha_at(const P1Coefficients& c, double lambda);

struct P1Solution {
  AttackVector alpha;
  double lambda = 0.0;
  int iterations = 0;
};

P1Solution solve_p1_closed_form_full(const P1Coefficients& c, double budget = 1.0);
AttackVector solve_p1_closed_form(const P1Coefficients& c, double budget = 1.0);

// Expected sum rate over random user and attacker radii, by Simpson quadrature.
double p2_objective(const SystemConfig& cfg, const PowerAllocation& pd, const AttackVector& alpha,
                    int grid_n, Vec* grad = nullptr);
AttackVector solve_p2(const SystemConfig& cfg, const PowerAllocation& pd, int grid_n = 64);

PowerAllocation water_filling(const LargeScale& ls, const AttackVector& alpha,
                              const SystemConfig& cfg);

enum class GameMethod { Levels, BestResponse };

struct GameOptions {
  double tol = 1e-4;
  int max_iter = 100;
  GameMethod method = GameMethod::Levels;
};

struct GameState {
  AttackVector alpha;
  PowerAllocation pd;
  int iterations = 0;
  double value = 0.0;
  std::vector<double> trace;  // sum rate after each sweep
};

GameState solve_p3_gauss_seidel(const SystemConfig& cfg, const Topology& topo,
                                const GameOptions& opt = {});

// E[R_sum(alpha_P2)] - E[R_sum(alpha_P1(topology))] over sampled topologies.
Estimate evpi(const SystemConfig& cfg, const PowerAllocation& pd, int n_topologies, const Rng& rng,
              int grid_n = 64, Execution ex = Execution::Parallel);

}  // namespace pca
