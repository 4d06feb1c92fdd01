#pragma once

#include <cstddef>
#include <vector>

#include "pca/attack_optim.hpp"
#include "pca/channel.hpp"
#include "pca/config.hpp"
#include "pca/parallel.hpp"
#include "pca/rng.hpp"

namespace pca {

// R_k = log2(1 + A_k/(a_k+B_k)); S_k = G_k a_k/(a_k+B_k); I_k = sum_{l!=k} G_l/B_l.
struct SecrecyCoefficients {
  Vec A;
  Vec B;
  Vec G;
  Vec I;
};

SecrecyCoefficients secrecy_coefficients(const LargeScale& ls, const PowerAllocation& pd,
                                         const SystemConfig& cfg);

// Exact max_k [R_k - Re_k]^+ from the large-M expressions.
double max_secrecy(const SecrecyCoefficients& c, const AttackVector& alpha);

// Upper bound 2^{U_k} on the secrecy of user k.
double p5_bound(const SecrecyCoefficients& c, std::size_t k, double alpha_k);

struct SecrecySolution {
  AttackVector alpha;
  double value = 0.0;          // nu for P4, nu_hat for P5
  std::vector<double> trace;   // P5: nu_hat per greedy step
};

// Grid over {alpha_k = n_k/grid_res, sum n_k <= grid_res}.
std::size_t simplex_grid_size(int K, int grid_res);
SecrecySolution solve_p4_bruteforce(const SecrecyCoefficients& c, int grid_res,
                                    Execution ex = Execution::Parallel,
                                    std::size_t max_points = 20'000'000);

SecrecySolution solve_p5_greedy(const SecrecyCoefficients& c, double delta = 1e-3);

// Terms of the chance-constrained bound for a known attacker distance and
// user distances drawn from the annulus.
struct ChanceCoefficients {
  Vec pd_MA;        // Pd_k M A
  Vec attack_unit;  // u_k z_J^-gamma
  Vec leak_unit;    // Pd_k u_k A z_J^-2gamma
  Vec est_noise;    // 1/(A P_k L)
  Vec I_hat;
  double Q = 0.0;
};

double chance_Q(const SystemConfig& cfg, double eps);
ChanceCoefficients chance_coefficients(const SystemConfig& cfg, double z_J,
                                       const PowerAllocation& pd, double eps);
double chance_constraint_lhs(const ChanceCoefficients& c, std::size_t k, double alpha_k);

SecrecySolution solve_p5_chance(const ChanceCoefficients& c, double delta = 1e-3);

struct ChanceValidation {
  double exceed_fraction = 0.0;  // Bobs with secrecy >= log2(nu_hat)
  double zero_fraction = 0.0;    // Bobs with zero secrecy
  double sigma = 0.0;            // binomial standard error of exceed_fraction
  std::size_t n = 0;
};

// Draws user radii for a fixed attacker distance and policy.
ChanceValidation validate_chance(const SystemConfig& cfg, double z_J, const PowerAllocation& pd,
                                 const AttackVector& alpha, double nu_hat, int n_draws,
                                 const Rng& rng, Execution ex = Execution::Parallel);

}  // namespace pca
