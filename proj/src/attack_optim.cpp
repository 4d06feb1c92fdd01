#include "pca/attack_optim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pca/quadrature.hpp"
#include "pca/rates.hpp"
#include "pca/simplex.hpp"

namespace pca {

namespace {

constexpr double kInvLn2 = 1.0 / std::numbers::ln2;

void check_attackable(const SystemConfig& cfg) {
  if (!(cfg.P_J > 0)) throw std::invalid_argument("attack coefficients need P_J > 0");
}

}  // namespace

P1Coefficients p1_coefficients(const LargeScale& ls, const PowerAllocation& pd,
                               const SystemConfig& cfg) {
  check_attackable(cfg);
  P1Coefficients c{Vec(cfg.K), Vec(cfg.K)};
  for (int k = 0; k < cfg.K; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    const double w = cfg.u(kk) * ls.theta_J;
    const double th = ls.theta[kk];
    c.A(k) = pd(k) * cfg.M * th * th / w;
    c.B(k) = (th + cfg.est_noise(kk)) / w;
  }
  return c;
}

P1Coefficients p1_coefficients_from_distances(const Topology& topo, const PowerAllocation& pd,
                                              const SystemConfig& cfg) {
  check_attackable(cfg);
  P1Coefficients c{Vec(cfg.K), Vec(cfg.K)};
  const double zJg = std::pow(topo.z_J, cfg.gamma);
  for (int k = 0; k < cfg.K; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    const double u = cfg.u(kk);
    const double zg = std::pow(topo.z[kk], cfg.gamma);
    c.A(k) = pd(k) * cfg.M * cfg.A * zJg / (u * zg * zg);
    c.B(k) = zJg / (u * zg) + zJg / (u * cfg.A * cfg.P_pilot[kk] * cfg.L);
  }
  return c;
}

double p1_objective(const P1Coefficients& c, const AttackVector& alpha) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < c.A.size(); ++k) s += std::log2(1.0 + c.A(k) / (alpha(k) + c.B(k)));
  return s;
}

double p1_objective(const P1Coefficients& c, const AttackVector& alpha, Vec& grad) {
  grad.resize(c.A.size());
  for (Eigen::Index k = 0; k < c.A.size(); ++k) {
    const double a = alpha(k) + c.B(k);
    grad(k) = -kInvLn2 * c.A(k) / (a * (a + c.A(k)));
  }
  return p1_objective(c, alpha);
}

AttackVector p1_alpha_at(const P1Coefficients& c, double lambda) {
  AttackVector a(c.A.size());
  for (Eigen::Index k = 0; k < c.A.size(); ++k) {
    const double A = c.A(k), B = c.B(k);
    if (A <= 0.0) {
      a(k) = 0.0;
      continue;
    }
    // rationalized form of (sqrt(A(A + 4/lambda)) - A - 2B)/2
    const double num = 2.0 * (A / lambda - B * (A + B));
    const double den = (A + 2.0 * B) + std::sqrt(A * A + 4.0 * A / lambda);
    a(k) = num > 0.0 ? num / den : 0.0;
  }
  return a;
}

P1Solution solve_p1_closed_form_full(const P1Coefficients& c, double budget) {
  const auto K = c.A.size();
  for (Eigen::Index k = 0; k < K; ++k)
    if (!std::isfinite(c.A(k)) || !std::isfinite(c.B(k)) || c.A(k) < 0.0 || c.B(k) <= 0.0)
      throw std::invalid_argument("P1 coefficients must be finite with A >= 0, B > 0");
  P1Solution sol;
  sol.alpha = AttackVector::Zero(K);
  if (budget <= 0.0 || c.A.maxCoeff() <= 0.0) return sol;

  // sum alpha(lambda) is zero for lambda >= hi
  double hi = 0.0;
  for (Eigen::Index k = 0; k < K; ++k)
    if (c.A(k) > 0.0) hi = std::max(hi, c.A(k) / (c.B(k) * (c.A(k) + c.B(k))));
  double lo = hi;
  int expand = 0;
  do {
    lo *= 1e-3;
    if (++expand > 300 || !(lo > 0.0)) {
      std::ostringstream os;
      os << "P1 bisection: could not bracket the multiplier (hi = " << hi << ")";
      throw SolverError(os.str());
    }
  } while (p1_alpha_at(c, lo).sum() <= budget);

  const double tol = 1e-10 * std::max(1.0, budget);
  AttackVector a_hi = p1_alpha_at(c, hi);
  for (sol.iterations = 0; sol.iterations < 400; ++sol.iterations) {
    if (budget - a_hi.sum() < tol) break;
    const double mid = std::sqrt(lo * hi);
    if (!(mid > lo && mid < hi)) break;
    AttackVector a_mid = p1_alpha_at(c, mid);
    if (a_mid.sum() > budget) {
      lo = mid;
    } else {
      hi = mid;
      a_hi = std::move(a_mid);
    }
  }
  if (budget - a_hi.sum() >= tol) {
    std::ostringstream os;
    os << "P1 bisection: budget residual " << budget - a_hi.sum() << " after "
       << sol.iterations << " steps";
    throw SolverError(os.str());
  }
  sol.alpha = a_hi;
  sol.lambda = hi;
  return sol;
}

AttackVector solve_p1_closed_form(const P1Coefficients& c, double budget) {
  return solve_p1_closed_form_full(c, budget).alpha;
}

double p2_objective(const SystemConfig& cfg, const PowerAllocation& pd, const AttackVector& alpha,
                    int grid_n, Vec* grad) {
  const RadialRule rx = annulus_simpson(cfg.D_min, cfg.D_max, grid_n);
  const RadialRule ry = annulus_simpson(cfg.D_min, cfg.D_maxJ, grid_n);
  std::vector<double> xg(rx.x.size()), yg(ry.x.size());
  for (std::size_t i = 0; i < rx.x.size(); ++i) xg[i] = std::pow(rx.x[i], -cfg.gamma);
  for (std::size_t j = 0; j < ry.x.size(); ++j) yg[j] = std::pow(ry.x[j], -cfg.gamma);
  if (grad) grad->setZero(cfg.K);
  double total = 0.0;
  for (int k = 0; k < cfg.K; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    const double u = cfg.u(kk);
    const double e = 1.0 / (cfg.A * cfg.P_pilot[kk] * cfg.L);
    double val = 0.0, der = 0.0;
    for (std::size_t i = 0; i < xg.size(); ++i) {
      const double num = pd(k) * cfg.M * cfg.A * xg[i] * xg[i];
      double vi = 0.0, di = 0.0;
      for (std::size_t j = 0; j < yg.size(); ++j) {
        const double D = alpha(k) * u * yg[j] + xg[i] + e;
        vi += ry.w[j] * std::log2(1.0 + num / D);
        di += ry.w[j] * (1.0 / (D + num) - 1.0 / D) * u * yg[j];
      }
      val += rx.w[i] * vi;
      der += rx.w[i] * di;
    }
    total += val;
    if (grad) (*grad)(k) = kInvLn2 * der;
  }
  return total;
}

AttackVector solve_p2(const SystemConfig& cfg, const PowerAllocation& pd, int grid_n) {
  if (grid_n < 8 || grid_n % 2 != 0)
    throw std::invalid_argument("solve_p2: grid_n must be even and >= 8");
  if (!(cfg.P_J > 0)) return AttackVector::Zero(cfg.K);
  const Objective f = [&](const Vec& a, Vec& g) { return p2_objective(cfg, pd, a, grid_n, &g); };
  return solve_p1_numeric(f, cfg.K);
}

PowerAllocation water_filling(const LargeScale& ls, const AttackVector& alpha,
                              const SystemConfig& cfg) {
  if (!(cfg.P_A > 0)) throw std::invalid_argument("water_filling: P_A must be positive");
  const Vec p = phi(ls, alpha, cfg);
  const auto K = static_cast<std::size_t>(cfg.K);
  std::vector<double> floor(K);
  for (std::size_t k = 0; k < K; ++k)
    floor[k] = p(static_cast<Eigen::Index>(k)) / (cfg.M * ls.theta[k] * ls.theta[k]);
  std::vector<double> sorted = floor;
  std::sort(sorted.begin(), sorted.end());
  // the water level is exact once the active set is known
  double eta = 0.0, cum = 0.0;
  for (std::size_t j = 0; j < K; ++j) {
    cum += sorted[j];
    eta = (cfg.P_A + cum) / static_cast<double>(j + 1);
    if (j + 1 == K || eta <= sorted[j + 1]) break;
  }
  PowerAllocation pd(cfg.K);
  for (std::size_t k = 0; k < K; ++k) {
    const double v = eta - floor[k];
    pd(static_cast<Eigen::Index>(k)) = v > 0.0 ? v : 0.0;
  }
  return pd;
}

namespace {

double sum_rate(const LargeScale& ls, const AttackVector& a, const PowerAllocation& pd,
                const SystemConfig& cfg) {
  return asymptotic_rates(ls, a, pd, cfg).sum_rate;
}

// Per-user saddle of log(1 + Pd s/(phi0 + w alpha)) for given BS level eta
// and attacker level tau (= 1/lambda).
struct LevelGame {
  Vec s, w, phi0;
  double P_A = 0.0;

  void primal(double eta, double tau, PowerAllocation& pd, AttackVector& a) const {
    const auto K = s.size();
    pd.resize(K);
    a.resize(K);
    for (Eigen::Index k = 0; k < K; ++k) {
      const double f = s(k) * w(k) * tau * eta / (s(k) * eta + w(k) * tau);
      if (w(k) > 0.0 && f > phi0(k)) {
        a(k) = (f - phi0(k)) / w(k);
        pd(k) = eta - f / s(k);
      } else {
        a(k) = 0.0;
        pd(k) = std::max(eta - phi0(k) / s(k), 0.0);
      }
    }
  }

  double power(double eta, double tau) const {
    PowerAllocation pd;
    AttackVector a;
    primal(eta, tau, pd, a);
    return pd.sum();
  }

  // BS level meeting the power budget for a fixed attacker level.
  double eta_for(double tau) const {
    double lo = 0.0, hi = P_A / s.size() + (phi0.array() / s.array()).maxCoeff();
    while (power(hi, tau) < P_A) {
      lo = hi;
      hi *= 2.0;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
      const double mid = 0.5 * (lo + hi);
      (power(mid, tau) < P_A ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }
};

GameState best_response_game(const SystemConfig& cfg, const LargeScale& ls,
                             const GameOptions& opt) {
  GameState st;
  st.alpha = AttackVector::Zero(cfg.K);
  double prev = 0.0;
  for (st.iterations = 1; st.iterations <= opt.max_iter; ++st.iterations) {
    st.pd = water_filling(ls, st.alpha, cfg);
    if (cfg.P_J > 0) st.alpha = solve_p1_closed_form(p1_coefficients(ls, st.pd, cfg));
    st.value = sum_rate(ls, st.alpha, st.pd, cfg);
    st.trace.push_back(st.value);
    if (cfg.P_J <= 0 || (st.iterations > 1 && std::abs(st.value - prev) < opt.tol * st.value))
      return st;
    prev = st.value;
  }
  std::ostringstream os;
  os << "Gauss-Seidel best response: no convergence in " << opt.max_iter << " iterations";
  throw SolverError(os.str(), st.trace);
}

GameState level_game(const SystemConfig& cfg, const LargeScale& ls, const GameOptions& opt) {
  GameState st;
  if (!(cfg.P_J > 0)) {
    st.alpha = AttackVector::Zero(cfg.K);
    st.pd = water_filling(ls, st.alpha, cfg);
    st.value = sum_rate(ls, st.alpha, st.pd, cfg);
    st.iterations = 1;
    st.trace.push_back(st.value);
    return st;
  }
  LevelGame g;
  g.P_A = cfg.P_A;
  g.s.resize(cfg.K);
  g.w.resize(cfg.K);
  g.phi0.resize(cfg.K);
  for (int k = 0; k < cfg.K; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    g.s(k) = cfg.M * ls.theta[kk] * ls.theta[kk];
    g.w(k) = cfg.u(kk) * ls.theta_J;
    g.phi0(k) = ls.theta[kk] + cfg.est_noise(kk);
  }

  // start from the attacker's best response to the attack-free allocation
  const PowerAllocation pd0 = water_filling(ls, AttackVector::Zero(cfg.K), cfg);
  double tau = 1.0 / solve_p1_closed_form_full(p1_coefficients(ls, pd0, cfg)).lambda;

  double tau_lo = 0.0, tau_hi = 0.0;  // 0 marks an open end
  double prev_log_tau = 0.0, prev_log_sum = 0.0;
  bool have_prev = false;
  double prev_value = 0.0;
  PowerAllocation pd;
  AttackVector a;
  for (st.iterations = 1; st.iterations <= opt.max_iter; ++st.iterations) {
    const double eta = g.eta_for(tau);
    g.primal(eta, tau, pd, a);
    const double value = sum_rate(ls, a, pd, cfg);
    st.trace.push_back(value);
    const double total = a.sum();
    if (st.iterations > 1 && std::abs(value - prev_value) < opt.tol * value &&
        std::abs(total - 1.0) < opt.tol)
      break;
    prev_value = value;

    if (total > 1.0)
      tau_hi = tau;
    else
      tau_lo = tau;
    double next;
    if (total <= 0.0) {
      next = tau * 10.0;
      have_prev = false;
    } else {
      const double lt = std::log(tau), ls_ = std::log(total);
      double slope = 1.0;
      if (have_prev && lt != prev_log_tau) {
        const double sl = (ls_ - prev_log_sum) / (lt - prev_log_tau);
        if (sl > 0.0 && std::isfinite(sl)) slope = sl;
      }
      next = std::exp(lt - ls_ / slope);
      prev_log_tau = lt;
      prev_log_sum = ls_;
      have_prev = true;
    }
    const bool below = tau_lo > 0.0 && next <= tau_lo;
    const bool above = tau_hi > 0.0 && next >= tau_hi;
    if (below || above || !std::isfinite(next)) {
      if (tau_lo > 0.0 && tau_hi > 0.0)
        next = std::sqrt(tau_lo * tau_hi);
      else
        next = tau_hi > 0.0 ? tau_hi / 4.0 : tau_lo * 4.0;
    }
    tau = next;
  }
  if (st.iterations > opt.max_iter) {
    std::ostringstream os;
    os << "Gauss-Seidel: no convergence in " << opt.max_iter << " sweeps";
    throw SolverError(os.str(), st.trace);
  }
  // exact feasibility: BS allocation meets P_A by construction; attacker
  // plays its exact best response to it
  st.pd = pd;
  st.alpha = solve_p1_closed_form(p1_coefficients(ls, st.pd, cfg));
  st.value = sum_rate(ls, st.alpha, st.pd, cfg);
  return st;
}

}  // namespace

GameState solve_p3_gauss_seidel(const SystemConfig& cfg, const Topology& topo,
                                const GameOptions& opt) {
  if (!(opt.tol > 0)) throw std::invalid_argument("solve_p3_gauss_seidel: tol must be positive");
  const LargeScale ls = large_scale(topo, cfg);
  return opt.method == GameMethod::BestResponse ? best_response_game(cfg, ls, opt)
                                                : level_game(cfg, ls, opt);
}

Estimate evpi(const SystemConfig& cfg, const PowerAllocation& pd, int n_topologies, const Rng& rng,
              int grid_n, Execution ex) {
  if (n_topologies < 1) throw std::invalid_argument("evpi: need at least one topology");
  std::vector<double> diff(static_cast<std::size_t>(n_topologies), 0.0);
  if (cfg.P_J > 0) {
    const AttackVector a2 = solve_p2(cfg, pd, grid_n);
    for_each_index(diff.size(), ex, [&](std::size_t i) {
      Rng r = rng.split(i);
      const LargeScale ls = large_scale(sample_topology(r, cfg), cfg);
      const AttackVector a1 = solve_p1_closed_form(p1_coefficients(ls, pd, cfg));
      diff[i] = sum_rate(ls, a2, pd, cfg) - sum_rate(ls, a1, pd, cfg);
    });
  }
  return summarize(diff);
}

}  // namespace pca
