#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace pca {

using Vec = Eigen::VectorXd;

// Attack fractions alpha_k: alpha >= 0, sum <= 1.
using AttackVector = Eigen::VectorXd;
// Downlink powers Pd_k: Pd >= 0, sum <= P_A.
using PowerAllocation = Eigen::VectorXd;

class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what, std::vector<double> trace = {})
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const std::vector<double>& trace() const { return trace_; }

 private:
  std::vector<double> trace_;
};

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All powers are linear and normalized to unit noise variance.
struct SystemConfig {
  int M = 256;
  int K = 10;
  int L = 10;
  double gamma = 3.522;
  double A = 3.0682e-5;
  double P_A = 0.0;
  std::vector<double> P_pilot;
  double P_J = 0.0;
  double D_min = 10.0;
  double D_max = 750.0;
  double D_maxJ = 750.0;
  double bandwidth_hz = 20e6;
  double t_p = 1.0;
  double t_d = 1.0;

  double duty_cycle() const { return t_d / (t_p + t_d); }
  double u(std::size_t k) const { return P_J / P_pilot[k]; }
  // 1/(P_k L): per-entry variance of the projected estimation noise.
  double est_noise(std::size_t k) const { return 1.0 / (P_pilot[k] * L); }

  // Throws std::invalid_argument describing the first violated invariant.
  void validate() const;
};

}  // namespace pca
