#include "pca/config.hpp"

#include <cmath>

namespace pca {

namespace {
void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument("invalid config: " + msg);
}
}  // namespace

void SystemConfig::validate() const {
  require(M >= 1, "M must be >= 1");
  require(K >= 1, "K must be >= 1");
  require(L >= 1, "L must be >= 1");
  require(std::isfinite(gamma) && gamma > 0, "gamma must be positive");
  require(std::isfinite(A) && A > 0, "A must be positive");
  require(std::isfinite(P_A) && P_A > 0, "P_A must be positive");
  require(P_pilot.size() == static_cast<std::size_t>(K), "P_pilot needs K entries");
  for (double p : P_pilot) require(std::isfinite(p) && p > 0, "pilot powers must be positive");
  // P_J = 0 is the attack-free limit.
  require(std::isfinite(P_J) && P_J >= 0, "P_J must be nonnegative");
  require(D_min > 0 && D_min <= D_max, "need 0 < D_min <= D_max");
  require(D_maxJ >= D_min, "need D_maxJ >= D_min");
  require(bandwidth_hz > 0, "bandwidth must be positive");
  require(t_p > 0 && t_d > 0, "phase durations must be positive");
}

}  // namespace pca
