#pragma once

#include <vector>

#include "pca/channel.hpp"
#include "pca/config.hpp"

namespace pca {

inline constexpr double kLeakageCap = 60.0;

struct RateReport {
  Vec R;
  double sum_rate = 0.0;
  double fairness = 1.0;
};

struct SecrecyReport {
  Vec R;
  Vec Re;
  Vec Rs;
  std::vector<bool> capped;  // Re_k hit the sentinel cap
  double max_secrecy = 0.0;
};

struct Leakage {
  Vec Re;
  std::vector<bool> capped;
};

// Jain index; all-zero rates are defined as perfectly fair.
double jain_fairness(const Vec& R);

RateReport make_report(Vec R);

// phi_k = theta_k + alpha_k u_k theta_J + 1/(P_k L)
Vec phi(const LargeScale& ls, const AttackVector& alpha, const SystemConfig& cfg);

RateReport exact_rates(const ChannelRealization& real, const LargeScale& ls,
                       const EstimatedChannels& est, const PowerAllocation& pd);

RateReport asymptotic_rates(const LargeScale& ls, const AttackVector& alpha,
                            const PowerAllocation& pd, const SystemConfig& cfg);

// Per-user eavesdropper signal power S_k (the M -> infinity limit scaled by 1/M).
Vec leakage_signal(const LargeScale& ls, const AttackVector& alpha, const PowerAllocation& pd,
                   const SystemConfig& cfg);

// Turns per-user leakage powers into rates with the saturating sentinel.
Leakage leakage_from_signal(const Vec& S, double cap = kLeakageCap);

Leakage leakage_rates(const LargeScale& ls, const AttackVector& alpha, const PowerAllocation& pd,
                      const SystemConfig& cfg, double cap = kLeakageCap);

// Finite-M leakage at the attacker with unit receiver noise.
Vec exact_leakage_rates(const ChannelRealization& real, const LargeScale& ls,
                        const EstimatedChannels& est, const PowerAllocation& pd);

SecrecyReport secrecy_from(const Vec& R, const Leakage& leak);

SecrecyReport secrecy_report(const LargeScale& ls, const AttackVector& alpha,
                             const PowerAllocation& pd, const SystemConfig& cfg,
                             double cap = kLeakageCap);

// Data-phase jamming. gJk_abs2 is N x K with |g_Jk^(i)|^2.
RateReport hybrid_sum_rate(const LargeScale& ls, const AttackVector& alpha, const Vec& beta,
                           const Eigen::MatrixXd& gJk_abs2, const PowerAllocation& pd,
                           const SystemConfig& cfg);

PowerAllocation uniform_power(const SystemConfig& cfg);

}  // namespace pca
