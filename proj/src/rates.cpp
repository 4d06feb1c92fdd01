#include "pca/rates.hpp"

#include <algorithm>
#include <cmath>

namespace pca {

double jain_fairness(const Vec& R) {
  const double s = R.sum();
  const double s2 = R.squaredNorm();
  if (s2 == 0.0) return 1.0;
  return s * s / (static_cast<double>(R.size()) * s2);
}

RateReport make_report(Vec R) {
  RateReport r;
  r.sum_rate = R.sum();
  r.fairness = jain_fairness(R);
  r.R = std::move(R);
  return r;
}

PowerAllocation uniform_power(const SystemConfig& cfg) {
  return PowerAllocation::Constant(cfg.K, cfg.P_A / cfg.K);
}

Vec phi(const LargeScale& ls, const AttackVector& alpha, const SystemConfig& cfg) {
  Vec p(cfg.K);
  for (int k = 0; k < cfg.K; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    p(k) = ls.theta[kk] + alpha(k) * cfg.u(kk) * ls.theta_J + cfg.est_noise(kk);
  }
  return p;
}

RateReport exact_rates(const ChannelRealization& real, const LargeScale& ls,
                       const EstimatedChannels& est, const PowerAllocation& pd) {
  const auto K = real.G.rows();
  Eigen::MatrixXcd H(K, real.G.cols());
  for (Eigen::Index k = 0; k < K; ++k)
    H.row(k) = std::sqrt(ls.theta[static_cast<std::size_t>(k)]) * real.G.row(k);
  const Eigen::MatrixXd X = (H * est.V.transpose()).cwiseAbs2();
  Vec R(K);
  for (Eigen::Index k = 0; k < K; ++k) {
    double interference = 1.0;
    for (Eigen::Index l = 0; l < K; ++l)
      if (l != k) interference += pd(l) * X(k, l);
    R(k) = std::log2(1.0 + pd(k) * X(k, k) / interference);
  }
  return make_report(std::move(R));
}

RateReport asymptotic_rates(const LargeScale& ls, const AttackVector& alpha,
                            const PowerAllocation& pd, const SystemConfig& cfg) {
  const Vec p = phi(ls, alpha, cfg);
  Vec R(cfg.K);
  for (int k = 0; k < cfg.K; ++k) {
    const double th = ls.theta[static_cast<std::size_t>(k)];
    R(k) = std::log2(1.0 + pd(k) * cfg.M * th * th / p(k));
  }
  return make_report(std::move(R));
}

Vec leakage_signal(const LargeScale& ls, const AttackVector& alpha, const PowerAllocation& pd,
                   const SystemConfig& cfg) {
  const Vec p = phi(ls, alpha, cfg);
  Vec S(cfg.K);
  for (int k = 0; k < cfg.K; ++k)
    S(k) = pd(k) * alpha(k) * cfg.u(static_cast<std::size_t>(k)) * ls.theta_J * ls.theta_J / p(k);
  return S;
}

Leakage leakage_from_signal(const Vec& S, double cap) {
  const auto K = S.size();
  Leakage out;
  out.Re = Vec::Zero(K);
  out.capped.assign(static_cast<std::size_t>(K), false);
  for (Eigen::Index k = 0; k < K; ++k) {
    if (S(k) <= 0.0) continue;
    double interference = 0.0;
    for (Eigen::Index l = 0; l < K; ++l)
      if (l != k) interference += S(l);
    const double re = interference > 0.0 ? std::log2(1.0 + S(k) / interference) : cap;
    if (re >= cap) {
      out.Re(k) = cap;
      out.capped[static_cast<std::size_t>(k)] = true;
    } else {
      out.Re(k) = re;
    }
  }
  return out;
}

Leakage leakage_rates(const LargeScale& ls, const AttackVector& alpha, const PowerAllocation& pd,
                      const SystemConfig& cfg, double cap) {
  return leakage_from_signal(leakage_signal(ls, alpha, pd, cfg), cap);
}

Vec exact_leakage_rates(const ChannelRealization& real, const LargeScale& ls,
                        const EstimatedChannels& est, const PowerAllocation& pd) {
  const auto K = est.V.rows();
  const Eigen::RowVectorXcd hJ = std::sqrt(ls.theta_J) * real.g_J;
  const Vec x = (est.V * hJ.transpose()).cwiseAbs2();
  Vec Re(K);
  for (Eigen::Index k = 0; k < K; ++k) {
    double interference = 1.0;
    for (Eigen::Index l = 0; l < K; ++l)
      if (l != k) interference += pd(l) * x(l);
    Re(k) = std::log2(1.0 + pd(k) * x(k) / interference);
  }
  return Re;
}

SecrecyReport secrecy_from(const Vec& R, const Leakage& leak) {
  SecrecyReport s;
  s.R = R;
  s.Re = leak.Re;
  s.capped = leak.capped;
  s.Rs = (R - leak.Re).cwiseMax(0.0);
  s.max_secrecy = s.Rs.size() ? s.Rs.maxCoeff() : 0.0;
  return s;
}

SecrecyReport secrecy_report(const LargeScale& ls, const AttackVector& alpha,
                             const PowerAllocation& pd, const SystemConfig& cfg, double cap) {
  return secrecy_from(asymptotic_rates(ls, alpha, pd, cfg).R, leakage_rates(ls, alpha, pd, cfg, cap));
}

RateReport hybrid_sum_rate(const LargeScale& ls, const AttackVector& alpha, const Vec& beta,
                           const Eigen::MatrixXd& gJk_abs2, const PowerAllocation& pd,
                           const SystemConfig& cfg) {
  const Vec p = phi(ls, alpha, cfg);
  Vec R(cfg.K);
  for (int k = 0; k < cfg.K; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    double E = 0.0;
    for (Eigen::Index i = 0; i < beta.size(); ++i)
      E += beta(i) * cfg.P_J * gJk_abs2(i, k) * ls.theta_Jk[kk];
    const double sinr = pd(k) * cfg.M * ls.theta[kk] * ls.theta[kk] / p(k);
    R(k) = std::log2(1.0 + sinr / (E + 1.0));
  }
  return make_report(std::move(R));
}

}  // namespace pca
