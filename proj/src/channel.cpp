#include "pca/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pca {

double annulus_radius(double u, double d_min, double d_max) {
  return std::sqrt(d_min * d_min + u * (d_max * d_max - d_min * d_min));
}

Topology sample_topology(Rng& rng, const SystemConfig& cfg) {
  const auto K = static_cast<std::size_t>(cfg.K);
  Topology t;
  t.z.resize(K);
  t.z_Jk.resize(K);
  std::vector<double> angle(K);
  for (std::size_t k = 0; k < K; ++k) {
    t.z[k] = annulus_radius(rng.uniform(), cfg.D_min, cfg.D_max);
    angle[k] = 2.0 * std::numbers::pi * rng.uniform();
  }
  t.z_J = annulus_radius(rng.uniform(), cfg.D_min, cfg.D_maxJ);
  const double aJ = 2.0 * std::numbers::pi * rng.uniform();
  for (std::size_t k = 0; k < K; ++k) {
    const double d2 = t.z[k] * t.z[k] + t.z_J * t.z_J - 2.0 * t.z[k] * t.z_J * std::cos(angle[k] - aJ);
    // keep the attacker outside the near-field exclusion radius of each Bob
    t.z_Jk[k] = std::max(std::sqrt(std::max(d2, 0.0)), cfg.D_min);
  }
  return t;
}

double path_gain(double distance, const SystemConfig& cfg) {
  if (!(distance > 0)) throw std::domain_error("path_gain: distance must be positive");
  return cfg.A * std::pow(distance, -cfg.gamma);
}

LargeScale large_scale(const Topology& topo, const SystemConfig& cfg) {
  LargeScale ls;
  ls.theta.reserve(topo.z.size());
  for (double z : topo.z) ls.theta.push_back(path_gain(z, cfg));
  ls.theta_J = path_gain(topo.z_J, cfg);
  for (double z : topo.z_Jk) ls.theta_Jk.push_back(path_gain(z, cfg));
  return ls;
}

ChannelRealization draw_realization(Rng& rng, const SystemConfig& cfg, int n_jam_antennas) {
  const int K = cfg.K, M = cfg.M;
  ChannelRealization r;
  r.G.resize(K, M);
  r.g_J.resize(M);
  r.W.resize(K, M);
  for (int k = 0; k < K; ++k)
    for (int m = 0; m < M; ++m) r.G(k, m) = rng.cnormal();
  for (int m = 0; m < M; ++m) r.g_J(m) = rng.cnormal();
  for (int k = 0; k < K; ++k) {
    const double s = std::sqrt(cfg.est_noise(static_cast<std::size_t>(k)));
    for (int m = 0; m < M; ++m) r.W(k, m) = s * rng.cnormal();
  }
  r.G_Jk.resize(n_jam_antennas, K);
  for (int i = 0; i < n_jam_antennas; ++i)
    for (int k = 0; k < K; ++k) r.G_Jk(i, k) = rng.cnormal();
  return r;
}

EstimatedChannels estimate_channels(const ChannelRealization& real, const LargeScale& ls,
                                    const AttackVector& alpha, const SystemConfig& cfg) {
  const auto K = real.G.rows();
  if (static_cast<std::size_t>(K) != ls.theta.size() || alpha.size() != K || real.W.rows() != K ||
      real.W.cols() != real.G.cols() || real.g_J.size() != real.G.cols())
    throw std::invalid_argument("estimate_channels: inconsistent dimensions");
  EstimatedChannels e;
  e.h_hat.resize(K, real.G.cols());
  e.V.resize(K, real.G.cols());
  for (Eigen::Index k = 0; k < K; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    const double a = std::sqrt(alpha(k) * cfg.u(kk) * ls.theta_J);
    e.h_hat.row(k) = std::sqrt(ls.theta[kk]) * real.G.row(k) + a * real.g_J + real.W.row(k);
    const double n = e.h_hat.row(k).norm();
    if (!(n > 0)) throw DegenerateEstimate("estimate_channels: zero-norm estimate");
    e.V.row(k) = e.h_hat.row(k).conjugate() / n;
  }
  return e;
}

}  // namespace pca
