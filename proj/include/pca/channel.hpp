#pragma once

#include <vector>

#include <Eigen/Dense>

#include "pca/config.hpp"
#include "pca/rng.hpp"

namespace pca {

struct Topology {
  std::vector<double> z;     // Alice to Bob_k
  double z_J = 0.0;          // Alice to attacker
  std::vector<double> z_Jk;  // attacker to Bob_k
};

struct LargeScale {
  std::vector<double> theta;
  double theta_J = 0.0;
  std::vector<double> theta_Jk;
};

struct ChannelRealization {
  Eigen::MatrixXcd G;     // K x M, CN(0,1)
  Eigen::RowVectorXcd g_J;  // 1 x M, CN(0,1)
  Eigen::MatrixXcd W;     // K x M, row k has per-entry variance 1/(P_k L)
  Eigen::MatrixXcd G_Jk;  // N x K attacker-side gains, empty unless requested
};

struct EstimatedChannels {
  Eigen::MatrixXcd h_hat;  // K x M
  Eigen::MatrixXcd V;      // K x M, unit-norm rows
};

class DegenerateEstimate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inverse CDF of a point uniform in the annulus [d_min, d_max].
double annulus_radius(double u, double d_min, double d_max);

Topology sample_topology(Rng& rng, const SystemConfig& cfg);

double path_gain(double distance, const SystemConfig& cfg);

LargeScale large_scale(const Topology& topo, const SystemConfig& cfg);

ChannelRealization draw_realization(Rng& rng, const SystemConfig& cfg, int n_jam_antennas = 0);

EstimatedChannels estimate_channels(const ChannelRealization& real, const LargeScale& ls,
                                    const AttackVector& alpha, const SystemConfig& cfg);

}  // namespace pca
