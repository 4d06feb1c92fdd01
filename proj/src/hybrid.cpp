#include "pca/hybrid.hpp"

#include <cmath>
#include <numbers>

#include "pca/attack_optim.hpp"
#include "pca/rates.hpp"

namespace pca {

namespace {

constexpr double kInvLn2 = 1.0 / std::numbers::ln2;

// Everything the SAA objective needs, flattened for fast evaluation.
struct Problem {
  int K = 0, N = 0, T = 0;
  Vec s, phi0, w;                  // SINR0_k = s_k/(phi0_k + w_k alpha_k)
  std::vector<Eigen::MatrixXd> h;  // per scenario N x K: P_J |g|^2 theta_Jk
  Execution exec = Execution::Parallel;

  Problem(const SystemConfig& cfg, const LargeScale& ls, const PowerAllocation& pd,
          const ScenarioSet& sc, Execution ex)
      : K(cfg.K), N(sc.N), T(sc.T), exec(ex) {
    s.resize(K);
    phi0.resize(K);
    w.resize(K);
    for (int k = 0; k < K; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      s(k) = pd(k) * cfg.M * ls.theta[kk] * ls.theta[kk];
      phi0(k) = ls.theta[kk] + cfg.est_noise(kk);
      w(k) = cfg.u(kk) * ls.theta_J;
    }
    h.resize(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t) {
      Eigen::MatrixXd m = sc.gJk_abs2[static_cast<std::size_t>(t)] * cfg.P_J;
      for (int k = 0; k < K; ++k) m.col(k) *= ls.theta_Jk[static_cast<std::size_t>(k)];
      h[static_cast<std::size_t>(t)] = std::move(m);
    }
  }

  // Sum rate of one scenario; accumulates d/dalpha into ga and writes d/dbeta.
  double scenario(int t, const Vec& sinr0, const Vec& dsinr0, const double* beta, Vec* ga,
                  double* gb) const {
    const Eigen::MatrixXd& H = h[static_cast<std::size_t>(t)];
    double val = 0.0;
    if (gb)
      for (int i = 0; i < N; ++i) gb[i] = 0.0;
    for (int k = 0; k < K; ++k) {
      double E = 0.0;
      for (int i = 0; i < N; ++i) E += beta[i] * H(i, k);
      const double r = sinr0(k) / (E + 1.0);
      val += std::log2(1.0 + r);
      const double dR = kInvLn2 / (1.0 + r);
      if (ga) (*ga)(k) += dR * dsinr0(k) / (E + 1.0);
      if (gb) {
        const double dE = -dR * r / (E + 1.0);
        for (int i = 0; i < N; ++i) gb[i] += dE * H(i, k);
      }
    }
    return val;
  }

  void sinr(const Vec& alpha, Vec& sinr0, Vec& dsinr0) const {
    sinr0.resize(K);
    dsinr0.resize(K);
    for (int k = 0; k < K; ++k) {
      const double p = phi0(k) + w(k) * alpha(k);
      sinr0(k) = s(k) / p;
      dsinr0(k) = -sinr0(k) * w(k) / p;
    }
  }

  // z = [alpha; beta_1; ...; beta_T]
  double value(const Vec& z, Vec& grad) const {
    Vec sinr0, dsinr0;
    sinr(z.head(K), sinr0, dsinr0);
    grad.setZero(z.size());
    std::vector<double> vals(static_cast<std::size_t>(T));
    std::vector<Vec> ga(static_cast<std::size_t>(T), Vec::Zero(K));
    for_each_index(static_cast<std::size_t>(T), exec, [&](std::size_t t) {
      const int ti = static_cast<int>(t);
      vals[t] = scenario(ti, sinr0, dsinr0, z.data() + K + ti * N, &ga[t],
                         grad.data() + K + ti * N);
    });
    double total = 0.0;
    Vec gsum = Vec::Zero(K);
    for (std::size_t t = 0; t < vals.size(); ++t) {
      total += vals[t];
      gsum += ga[t];
    }
    const double inv = 1.0 / T;
    grad.head(K) = gsum * inv;
    grad.tail(static_cast<Eigen::Index>(T) * N) *= inv;
    return total * inv;
  }
};

Vec flatten(const AttackVector& a, const std::vector<Vec>& b, int N) {
  Vec z(a.size() + static_cast<Eigen::Index>(b.size()) * N);
  z.head(a.size()) = a;
  for (std::size_t t = 0; t < b.size(); ++t)
    z.segment(a.size() + static_cast<Eigen::Index>(t) * N, N) = b[t];
  return z;
}

void unflatten(const Vec& z, int K, int N, int T, AttackVector& a, std::vector<Vec>& b) {
  a = z.head(K);
  b.assign(static_cast<std::size_t>(T), Vec());
  for (int t = 0; t < T; ++t) b[static_cast<std::size_t>(t)] = z.segment(K + t * N, N);
}

}  // namespace

ScenarioSet build_scenarios(Rng rng, int N, int K, int T) {
  if (N < 1 || K < 1 || T < 1) throw std::invalid_argument("build_scenarios: N, K, T must be >= 1");
  ScenarioSet s{T, N, K, {}};
  s.gJk_abs2.reserve(static_cast<std::size_t>(T));
  for (int t = 0; t < T; ++t) {
    Rng r = rng.split(static_cast<std::uint64_t>(t));
    Eigen::MatrixXd m(N, K);
    for (int i = 0; i < N; ++i)
      for (int k = 0; k < K; ++k) m(i, k) = std::norm(r.cnormal());
    s.gJk_abs2.push_back(std::move(m));
  }
  return s;
}

ScenarioSet restrict_antennas(const ScenarioSet& s, int n) {
  if (n < 1 || n > s.N) throw std::invalid_argument("restrict_antennas: bad antenna count");
  ScenarioSet r{s.T, n, s.K, {}};
  for (const auto& m : s.gJk_abs2) r.gJk_abs2.push_back(m.topRows(n));
  return r;
}

double p6_objective(const SystemConfig& cfg, const LargeScale& ls, const PowerAllocation& pd,
                    const ScenarioSet& s, const HybridPolicy& p) {
  const Problem pr(cfg, ls, pd, s, Execution::Serial);
  Vec g;
  return pr.value(flatten(p.alpha, p.beta, s.N), g);
}

bool hybrid_feasible(const SystemConfig& cfg, const HybridPolicy& p, double tol) {
  if (p.alpha.minCoeff() < -tol) return false;
  const double C = cfg.t_p + cfg.t_d;
  for (const auto& b : p.beta) {
    if (b.size() && b.minCoeff() < -tol) return false;
    if (cfg.t_p * p.alpha.sum() + cfg.t_d * b.sum() > C * (1.0 + tol)) return false;
  }
  return true;
}

HybridPolicy project_hybrid(const SystemConfig& cfg, const AttackVector& a,
                            const std::vector<Vec>& b, double w_beta, bool attack_pilots,
                            bool jam_data) {
  const double C = cfg.t_p + cfg.t_d;
  HybridPolicy p;
  p.beta.resize(b.size());
  if (!jam_data) {
    p.alpha = attack_pilots ? project_capped_simplex(a, C / cfg.t_p) : AttackVector::Zero(a.size());
    for (std::size_t t = 0; t < b.size(); ++t) p.beta[t] = Vec::Zero(b[t].size());
    return p;
  }
  if (!attack_pilots) {
    p.alpha = AttackVector::Zero(a.size());
    for (std::size_t t = 0; t < b.size(); ++t) p.beta[t] = project_capped_simplex(b[t], C / cfg.t_d);
    return p;
  }
  // uncoupled projection first; it is the answer whenever it is feasible
  p.alpha = a.cwiseMax(0.0);
  bool ok = cfg.t_p * p.alpha.sum() <= C;
  for (std::size_t t = 0; t < b.size(); ++t) {
    p.beta[t] = b[t].cwiseMax(0.0);
    ok = ok && cfg.t_p * p.alpha.sum() + cfg.t_d * p.beta[t].sum() <= C;
  }
  if (ok) return p;

  // g(s) = d^2(a, {sum = s}) + w_beta sum_t d^2(b_t, {sum <= cap(s)}) is convex in s
  const auto g = [&](double s) {
    const double cap = std::max((C - cfg.t_p * s) / cfg.t_d, 0.0);
    double v = (a - project_simplex(a, s)).squaredNorm();
    for (const auto& bt : b) v += w_beta * capped_simplex_dist2(bt, cap);
    return v;
  };
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = 0.0, hi = C / cfg.t_p;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double g1 = g(x1), g2 = g(x2);
  for (int it = 0; it < 90 && hi - lo > 1e-15 * (C / cfg.t_p); ++it) {
    if (g1 <= g2) {
      hi = x2;
      x2 = x1;
      g2 = g1;
      x1 = hi - phi * (hi - lo);
      g1 = g(x1);
    } else {
      lo = x1;
      x1 = x2;
      g1 = g2;
      x2 = lo + phi * (hi - lo);
      g2 = g(x2);
    }
  }
  double s = 0.5 * (lo + hi);
  if (g(0.0) <= g(s)) s = 0.0;
  if (g(C / cfg.t_p) <= g(s)) s = C / cfg.t_p;
  const double cap = std::max((C - cfg.t_p * s) / cfg.t_d, 0.0);
  p.alpha = project_simplex(a, s);
  for (std::size_t t = 0; t < b.size(); ++t) p.beta[t] = project_capped_simplex(b[t], cap);
  return p;
}

HybridPolicy solve_p6_saa(const SystemConfig& cfg, const Topology& topo, const PowerAllocation& pd,
                          const ScenarioSet& s, const HybridOptions& opt) {
  if (s.K != cfg.K) throw std::invalid_argument("solve_p6_saa: scenario K mismatch");
  const LargeScale ls = large_scale(topo, cfg);
  const Problem pr(cfg, ls, pd, s, opt.exec);
  const int K = cfg.K, N = s.N, T = s.T;

  HybridPolicy start;
  start.alpha = AttackVector::Zero(K);
  start.beta.assign(static_cast<std::size_t>(T), Vec::Zero(N));
  if (!(cfg.P_J > 0)) {
    start.objective = p6_objective(cfg, ls, pd, s, start);
    return start;
  }
  // warm start at the pilot-only attack with the ordinary budget
  if (opt.attack_pilots) start.alpha = solve_p1_closed_form(p1_coefficients(ls, pd, cfg));

  // beta lives on a 1/t_d scale and each block only sees 1/T of the objective
  const double ratio = cfg.t_p / cfg.t_d;
  const double w_beta = 1.0 / (T * ratio * ratio);
  Vec scale = Vec::Ones(K + T * N);
  scale.tail(T * N).setConstant(1.0 / w_beta);
  const Projection proj = [&](const Vec& y) {
    AttackVector a;
    std::vector<Vec> b;
    unflatten(y, K, N, T, a, b);
    const HybridPolicy p = project_hybrid(cfg, a, b, w_beta, opt.attack_pilots, opt.jam_data);
    return flatten(p.alpha, p.beta, N);
  };
  const Objective f = [&](const Vec& z, Vec& g) { return pr.value(z, g); };
  PgdOptions po;
  po.tol = opt.tol;
  po.max_iter = opt.max_iter;
  const PgdResult r = projected_gradient(f, proj, flatten(start.alpha, start.beta, N), po, &scale);
  HybridPolicy out;
  unflatten(r.x, K, N, T, out.alpha, out.beta);
  out.objective = r.value;
  out.iterations = r.iterations;
  return out;
}

Estimate evaluate_policy_out_of_sample(const SystemConfig& cfg, const Topology& topo,
                                       const PowerAllocation& pd, const AttackVector& alpha,
                                       const ScenarioSet& fresh, const HybridOptions& opt) {
  const LargeScale ls = large_scale(topo, cfg);
  const Problem pr(cfg, ls, pd, fresh, Execution::Serial);
  const double cap = std::max((cfg.t_p + cfg.t_d - cfg.t_p * alpha.sum()) / cfg.t_d, 0.0);
  Vec sinr0, dsinr0;
  pr.sinr(alpha, sinr0, dsinr0);
  std::vector<double> vals(static_cast<std::size_t>(fresh.T));
  for_each_index(vals.size(), opt.exec, [&](std::size_t t) {
    const int ti = static_cast<int>(t);
    const int N = fresh.N;
    if (!opt.jam_data || cap <= 0.0 || !(cfg.P_J > 0)) {
      const Vec zero = Vec::Zero(N);
      vals[t] = pr.scenario(ti, sinr0, dsinr0, zero.data(), nullptr, nullptr);
      return;
    }
    const Objective f = [&](const Vec& b, Vec& g) {
      g.resize(N);
      return pr.scenario(ti, sinr0, dsinr0, b.data(), nullptr, g.data());
    };
    const Projection proj = [cap](const Vec& y) { return project_capped_simplex(y, cap); };
    PgdOptions po;
    po.tol = opt.tol;
    po.max_iter = opt.max_iter;
    vals[t] = projected_gradient(f, proj, Vec::Zero(N), po).value;
  });
  return summarize(vals);
}

}  // namespace pca
