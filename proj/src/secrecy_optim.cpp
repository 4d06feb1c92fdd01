#include "pca/secrecy_optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pca/rates.hpp"

namespace pca {

SecrecyCoefficients secrecy_coefficients(const LargeScale& ls, const PowerAllocation& pd,
                                         const SystemConfig& cfg) {
  const P1Coefficients p1 = p1_coefficients(ls, pd, cfg);
  SecrecyCoefficients c{p1.A, p1.B, pd * ls.theta_J, Vec(cfg.K)};
  for (int k = 0; k < cfg.K; ++k) {
    double s = 0.0;
    for (int l = 0; l < cfg.K; ++l)
      if (l != k) s += c.G(l) / c.B(l);
    c.I(k) = s;
  }
  return c;
}

double max_secrecy(const SecrecyCoefficients& c, const AttackVector& alpha) {
  const auto K = c.A.size();
  Vec R(K), S(K);
  for (Eigen::Index k = 0; k < K; ++k) {
    const double d = alpha(k) + c.B(k);
    R(k) = std::log2(1.0 + c.A(k) / d);
    S(k) = c.G(k) * alpha(k) / d;
  }
  return secrecy_from(R, leakage_from_signal(S)).max_secrecy;
}

double p5_bound(const SecrecyCoefficients& c, std::size_t k, double alpha_k) {
  const auto i = static_cast<Eigen::Index>(k);
  const double d = alpha_k + c.B(i);
  const double gain = 1.0 + c.A(i) / d;
  if (c.I(i) <= 0.0) return alpha_k > 0.0 ? 0.0 : gain;
  return gain / (1.0 + c.G(i) * alpha_k / (d * c.I(i)));
}

std::size_t simplex_grid_size(int K, int grid_res) {
  // C(grid_res + K, K) in floating point to detect overflow
  long double n = 1.0L;
  for (int i = 1; i <= K; ++i) n = n * static_cast<long double>(grid_res + i) / i;
  if (n > static_cast<long double>(std::numeric_limits<std::size_t>::max() / 2))
    return std::numeric_limits<std::size_t>::max();
  return static_cast<std::size_t>(std::llround(static_cast<double>(n)));
}

namespace {

struct GridSearch {
  int K = 0;
  int res = 0;
  Eigen::MatrixXd R, S;  // K x (res+1) tables on the grid
  std::vector<int> n;
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_n;

  double eval() const {
    double total = 0.0;
    for (int k = 0; k < K; ++k) total += S(k, n[static_cast<std::size_t>(k)]);
    double worst = 0.0;
    for (int k = 0; k < K; ++k) {
      const int nk = n[static_cast<std::size_t>(k)];
      const double s = S(k, nk);
      double re = 0.0;
      if (s > 0.0) {
        const double interference = total - s;
        re = interference > 0.0 ? std::min(std::log2(1.0 + s / interference), kLeakageCap)
                                : kLeakageCap;
      }
      worst = std::max(worst, R(k, nk) - re);
    }
    return worst;
  }

  void visit(int k, int left) {
    if (k == K) {
      const double v = eval();
      if (v < best) {
        best = v;
        best_n = n;
      }
      return;
    }
    for (int v = 0; v <= left; ++v) {
      n[static_cast<std::size_t>(k)] = v;
      visit(k + 1, left - v);
    }
  }
};

}  // namespace

SecrecySolution solve_p4_bruteforce(const SecrecyCoefficients& c, int grid_res, Execution ex,
                                    std::size_t max_points) {
  if (grid_res < 1) throw std::invalid_argument("solve_p4_bruteforce: grid_res must be >= 1");
  const int K = static_cast<int>(c.A.size());
  const std::size_t points = simplex_grid_size(K, grid_res);
  if (points > max_points) {
    std::ostringstream os;
    os << "solve_p4_bruteforce: " << points << " grid points for K = " << K
       << " exceed the budget of " << max_points << "; use solve_p5_greedy";
    throw CapacityError(os.str());
  }
  GridSearch base;
  base.K = K;
  base.res = grid_res;
  base.R.resize(K, grid_res + 1);
  base.S.resize(K, grid_res + 1);
  for (int k = 0; k < K; ++k)
    for (int v = 0; v <= grid_res; ++v) {
      const double a = static_cast<double>(v) / grid_res;
      const double d = a + c.B(k);
      base.R(k, v) = std::log2(1.0 + c.A(k) / d);
      base.S(k, v) = c.G(k) * a / d;
    }
  base.n.assign(static_cast<std::size_t>(K), 0);

  // one block per value of the first coordinate
  std::vector<GridSearch> blocks(static_cast<std::size_t>(grid_res) + 1, base);
  for_each_index(blocks.size(), ex, [&](std::size_t b) {
    GridSearch& g = blocks[b];
    g.n[0] = static_cast<int>(b);
    g.visit(1, grid_res - static_cast<int>(b));
  });
  SecrecySolution sol;
  double best = std::numeric_limits<double>::infinity();
  const std::vector<int>* arg = nullptr;
  for (const auto& g : blocks)
    if (g.best < best) {
      best = g.best;
      arg = &g.best_n;
    }
  sol.alpha.resize(K);
  for (int k = 0; k < K; ++k)
    sol.alpha(k) = static_cast<double>((*arg)[static_cast<std::size_t>(k)]) / grid_res;
  sol.value = std::max(best, 0.0);
  return sol;
}

namespace {

template <class Bound>
SecrecySolution greedy(int K, double delta, Bound&& f) {
  if (!(delta > 0)) throw std::invalid_argument("greedy: delta must be positive");
  SecrecySolution sol;
  sol.alpha = AttackVector::Zero(K);
  Vec val(K);
  for (int k = 0; k < K; ++k) val(k) = f(static_cast<std::size_t>(k), 0.0);
  double used = 0.0;
  for (;;) {
    Eigen::Index i = 0;
    const double nu = val.maxCoeff(&i);  // first maximum wins ties
    sol.trace.push_back(nu);
    if (nu < 1.0 || used >= 1.0) break;
    const double step = std::min(delta, 1.0 - used);
    sol.alpha(i) += step;
    used = step < delta ? 1.0 : used + step;
    val(i) = f(static_cast<std::size_t>(i), sol.alpha(i));
  }
  sol.value = std::max(val.maxCoeff(), 1.0);
  return sol;
}

}  // namespace

SecrecySolution solve_p5_greedy(const SecrecyCoefficients& c, double delta) {
  return greedy(static_cast<int>(c.A.size()), delta,
                [&](std::size_t k, double a) { return p5_bound(c, k, a); });
}

double chance_Q(const SystemConfig& cfg, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("chance_Q: eps must be in [0, 1]");
  const double r2 = eps * (cfg.D_max * cfg.D_max - cfg.D_min * cfg.D_min) + cfg.D_min * cfg.D_min;
  return std::pow(r2, cfg.gamma);
}

ChanceCoefficients chance_coefficients(const SystemConfig& cfg, double z_J,
                                       const PowerAllocation& pd, double eps) {
  ChanceCoefficients c;
  const int K = cfg.K;
  const double zg = std::pow(z_J, -cfg.gamma);
  const double dmax_g = std::pow(cfg.D_max, -cfg.gamma);
  c.pd_MA.resize(K);
  c.attack_unit.resize(K);
  c.leak_unit.resize(K);
  c.est_noise.resize(K);
  c.I_hat.resize(K);
  Vec term(K);
  for (int k = 0; k < K; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    const double u = cfg.u(kk);
    c.pd_MA(k) = pd(k) * cfg.M * cfg.A;
    c.attack_unit(k) = u * zg;
    c.leak_unit(k) = pd(k) * u * cfg.A * zg * zg;
    c.est_noise(k) = 1.0 / (cfg.A * cfg.P_pilot[kk] * cfg.L);
    term(k) = pd(k) * cfg.A * u * zg * zg / (u * zg + dmax_g + c.est_noise(k));
  }
  for (int k = 0; k < K; ++k) {
    double s = 0.0;
    for (int l = 0; l < K; ++l)
      if (l != k) s += term(l);
    c.I_hat(k) = s;
  }
  c.Q = chance_Q(cfg, eps);
  return c;
}

double chance_constraint_lhs(const ChanceCoefficients& c, std::size_t k, double alpha_k) {
  const auto i = static_cast<Eigen::Index>(k);
  const double Ih = c.I_hat(i);
  const double jam = alpha_k * c.attack_unit(i) + c.est_noise(i);
  const double num = Ih * (c.pd_MA(i) + 1.0 + c.Q * jam);
  const double den = Ih + c.Q * (alpha_k * c.leak_unit(i) + Ih * jam);
  return num / den;
}

SecrecySolution solve_p5_chance(const ChanceCoefficients& c, double delta) {
  return greedy(static_cast<int>(c.pd_MA.size()), delta,
                [&](std::size_t k, double a) { return chance_constraint_lhs(c, k, a); });
}

ChanceValidation validate_chance(const SystemConfig& cfg, double z_J, const PowerAllocation& pd,
                                 const AttackVector& alpha, double nu_hat, int n_draws,
                                 const Rng& rng, Execution ex) {
  if (n_draws < 1) throw std::invalid_argument("validate_chance: need at least one draw");
  const double threshold = std::log2(nu_hat);
  const auto K = static_cast<std::size_t>(cfg.K);
  std::vector<int> exceed(static_cast<std::size_t>(n_draws)), zero(static_cast<std::size_t>(n_draws));
  for_each_index(static_cast<std::size_t>(n_draws), ex, [&](std::size_t d) {
    Rng r = rng.split(d);
    LargeScale ls;
    ls.theta.resize(K);
    for (std::size_t k = 0; k < K; ++k)
      ls.theta[k] = path_gain(annulus_radius(r.uniform(), cfg.D_min, cfg.D_max), cfg);
    ls.theta_J = path_gain(z_J, cfg);
    const SecrecyReport s = secrecy_report(ls, alpha, pd, cfg);
    int e = 0, z = 0;
    for (std::size_t k = 0; k < K; ++k) {
      const auto i = static_cast<Eigen::Index>(k);
      if (s.R(i) - s.Re(i) >= threshold) ++e;
      if (s.Rs(i) <= 0.0) ++z;
    }
    exceed[d] = e;
    zero[d] = z;
  });
  ChanceValidation v;
  v.n = K * static_cast<std::size_t>(n_draws);
  double e = 0.0, z = 0.0;
  for (std::size_t d = 0; d < exceed.size(); ++d) {
    e += exceed[d];
    z += zero[d];
  }
  v.exceed_fraction = e / static_cast<double>(v.n);
  v.zero_fraction = z / static_cast<double>(v.n);
  v.sigma = std::sqrt(std::max(v.exceed_fraction * (1.0 - v.exceed_fraction), 0.0) /
                      static_cast<double>(v.n));
  return v;
}

}  // namespace pca
