#include "pca/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "pca/attack_optim.hpp"
#include "pca/channel.hpp"
#include "pca/hybrid.hpp"
#include "pca/rates.hpp"
#include "pca/secrecy_optim.hpp"
#include "pca/stats.hpp"

namespace pca {

const std::vector<ScenarioInfo>& scenario_catalog() {
  static const std::vector<ScenarioInfo> cat = {
      {"fig4a", "M", {64, 128, 256, 512, 1024},
       "exact vs large-M sum rate under uniform Alice power and uniform attack"},
      {"fig4b", "D_maxJ", {100, 200, 300, 400, 500, 600, 700, 750},
       "sum rate vs attacker radius for all pilot-contamination schemes, with EVPI"},
      {"fig4c", "D_maxJ", {100, 200, 300, 400, 500, 600, 700, 750},
       "Jain fairness vs attacker radius"},
      {"fig4d", "L", {1, 2, 5, 10, 20, 50}, "sum rate vs pilot length at D_maxJ = 250 m"},
      {"fig4e", "N", {1, 2, 4},
       "hybrid, pilot-only and data-only attacks vs attacker antenna count"},
      {"fig4f", "D_maxJ", {150, 250, 325, 450, 550, 650, 750},
       "max individual secrecy and max rate, no attack vs secrecy attacks"},
      {"fig4g", "D_maxJ", {250}, "empirical CDF of per-user rate"},
      {"fig4h", "D_maxJ", {325}, "empirical CDF of per-user secrecy rate"},
      {"fig4i", "eps", {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9},
       "chance-constrained secrecy attack vs eps for K and K = 20"},
  };
  return cat;
}

const ScenarioInfo& find_scenario(const std::string& id) {
  for (const auto& s : scenario_catalog())
    if (s.id == id) return s;
  throw std::invalid_argument("unknown scenario '" + id + "' (see list-scenarios)");
}

double dbm_to_linear(double dbm, double noise_dbm) { return std::pow(10.0, (dbm - noise_dbm) / 10.0); }
double linear_to_dbm(double p, double noise_dbm) { return 10.0 * std::log10(p) + noise_dbm; }

void ExperimentSpec::validate() const {
  find_scenario(scenario);
  if (realizations < 1) throw std::invalid_argument("realizations must be >= 1");
  if (grid_n < 8 || grid_n % 2) throw std::invalid_argument("grid_n must be even and >= 8");
  if (scenarios < 1) throw std::invalid_argument("scenarios must be >= 1");
  if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
  if (p4_grid < 1) throw std::invalid_argument("p4_grid must be >= 1");
  if (validation_draws < 1) throw std::invalid_argument("validation_draws must be >= 1");
  for (double v : sweep)
    if (!std::isfinite(v)) throw std::invalid_argument("sweep values must be finite");
  make_system(*this).validate();
}

SystemConfig make_system(const ExperimentSpec& spec) {
  SystemConfig c;
  c.M = spec.M;
  c.K = spec.K;
  c.L = spec.L;
  c.gamma = spec.gamma;
  c.A = spec.A;
  c.P_A = dbm_to_linear(spec.P_A_dBm, spec.noise_dBm);
  c.P_pilot.assign(static_cast<std::size_t>(std::max(spec.K, 0)),
                   dbm_to_linear(spec.P_pilot_dBm, spec.noise_dBm));
  c.P_J = dbm_to_linear(spec.P_J_dBm, spec.noise_dBm);
  c.D_min = spec.D_min;
  c.D_max = spec.D_max;
  c.D_maxJ = spec.D_maxJ > 0 ? spec.D_maxJ : 250.0;
  c.bandwidth_hz = spec.bandwidth_hz;
  c.t_p = spec.t_p;
  c.t_d = spec.t_d;
  return c;
}

void apply_scale(ExperimentSpec& spec, Scale scale) {
  if (scale == Scale::Paper) {
    spec.M = 1000;
    spec.realizations = 100000;
  } else {
    spec.M = 256;
    spec.realizations = 500;
  }
}

namespace {

using Samples = std::vector<double>;

struct Collector {
  ExperimentResult& res;
  double rate_factor;

  void add(double sweep, const std::string& scheme, const std::string& metric, const Samples& x,
           bool is_rate) {
    Estimate e = summarize(x);
    const double f = is_rate ? rate_factor : 1.0;
    res.rows.push_back({sweep, scheme, metric, e.mean * f, e.se * f, e.n});
  }

  // Quantile rows of an empirical CDF; the spread between order statistics
  // one binomial standard deviation apart stands in for the standard error.
  void quantiles(double sweep, const std::string& scheme, Samples x) {
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    for (int q10 = 1; q10 <= 9; ++q10) {
      const double q = q10 / 10.0;
      const auto at = [&](double p) {
        const double idx = std::clamp(std::ceil(p * n) - 1.0, 0.0, n - 1.0);
        return x[static_cast<std::size_t>(idx)];
      };
      const double s = std::sqrt(q * (1.0 - q) / n);
      const double se = 0.5 * (at(std::min(q + s, 1.0)) - at(std::max(q - s, 0.0)));
      res.rows.push_back({q, scheme, "cdf_point", at(q) * rate_factor, se * rate_factor,
                          x.size()});
    }
    for (double& v : x) v *= rate_factor;
    res.cdfs.push_back({scheme, sweep, std::move(x)});
  }
};

std::string realization_tag(double sweep, std::size_t i, const Rng& r) {
  std::ostringstream os;
  os << "sweep " << sweep << ", realization " << i << " (stream key " << r.key() << "): ";
  return os.str();
}

// Runs body(i, rng) for every realization and rethrows solver failures with
// the failing realization's stream key.
template <class Body>
void realizations(const ExperimentSpec& spec, double sweep, Body&& body) {
  const Rng master(spec.seed);
  for_each_index(static_cast<std::size_t>(spec.realizations), spec.exec, [&](std::size_t i) {
    const Rng r = master.split(i);
    try {
      Rng rr = r;
      body(i, rr);
    } catch (const SolverError& e) {
      throw SolverError(realization_tag(sweep, i, r) + e.what(), e.trace());
    } catch (const std::exception& e) {
      throw std::runtime_error(realization_tag(sweep, i, r) + e.what());
    }
  });
}

void run_fig4a(const ExperimentSpec& spec, const std::vector<double>& sweep, Collector& out) {
  for (double Mv : sweep) {
    SystemConfig cfg = make_system(spec);
    cfg.M = static_cast<int>(Mv);
    cfg.D_maxJ = spec.D_maxJ > 0 ? spec.D_maxJ : cfg.D_max;
    cfg.validate();
    const PowerAllocation pd = uniform_power(cfg);
    const AttackVector unc = solve_p2(cfg, pd, spec.grid_n);
    const auto n = static_cast<std::size_t>(spec.realizations);
    Samples ex0(n), as0(n), ex1(n), as1(n);
    realizations(spec, Mv, [&](std::size_t i, Rng& r) {
      const Topology topo = sample_topology(r, cfg);
      const LargeScale ls = large_scale(topo, cfg);
      const ChannelRealization real = draw_realization(r, cfg);
      const AttackVector none = AttackVector::Zero(cfg.K);
      ex0[i] = exact_rates(real, ls, estimate_channels(real, ls, none, cfg), pd).sum_rate;
      as0[i] = asymptotic_rates(ls, none, pd, cfg).sum_rate;
      ex1[i] = exact_rates(real, ls, estimate_channels(real, ls, unc, cfg), pd).sum_rate;
      as1[i] = asymptotic_rates(ls, unc, pd, cfg).sum_rate;
    });
    out.add(Mv, "noPC", "sum_rate", as0, true);
    out.add(Mv, "noPC", "sum_rate_exact", ex0, true);
    out.add(Mv, "PC-unc", "sum_rate", as1, true);
    out.add(Mv, "PC-unc", "sum_rate_exact", ex1, true);
  }
}

// fig4b, fig4c, fig4d share one solver chain.
void run_pc_family(const ExperimentSpec& spec, const std::string& var,
                   const std::vector<double>& sweep, bool fairness, Collector& out) {
  for (double v : sweep) {
    SystemConfig cfg = make_system(spec);
    if (var == "D_maxJ") cfg.D_maxJ = v;
    if (var == "L") cfg.L = static_cast<int>(v);
    cfg.validate();
    const PowerAllocation pd = uniform_power(cfg);
    const AttackVector unc = solve_p2(cfg, pd, spec.grid_n);
    const auto n = static_cast<std::size_t>(spec.realizations);
    const char* names[] = {"noPC", "singleUserPC", "PC-unc", "PC-pi", "optimalPC-pi"};
    std::vector<Samples> sum(5, Samples(n)), fair(5, Samples(n));
    realizations(spec, v, [&](std::size_t i, Rng& r) {
      const Topology topo = sample_topology(r, cfg);
      const LargeScale ls = large_scale(topo, cfg);
      Rng pick = r.split(1);
      AttackVector single = AttackVector::Zero(cfg.K);
      single(static_cast<Eigen::Index>(pick.index(static_cast<std::size_t>(cfg.K)))) = 1.0;
      const AttackVector pi = solve_p1_closed_form(p1_coefficients(ls, pd, cfg));
      const GameState game = solve_p3_gauss_seidel(cfg, topo);
      const RateReport reps[] = {
          asymptotic_rates(ls, AttackVector::Zero(cfg.K), pd, cfg),
          asymptotic_rates(ls, single, pd, cfg),
          asymptotic_rates(ls, unc, pd, cfg),
          asymptotic_rates(ls, pi, pd, cfg),
          asymptotic_rates(ls, game.alpha, game.pd, cfg),
      };
      for (std::size_t s = 0; s < 5; ++s) {
        sum[s][i] = reps[s].sum_rate;
        fair[s][i] = reps[s].fairness;
      }
    });
    for (std::size_t s = 0; s < 5; ++s) {
      if (fairness)
        out.add(v, names[s], "fairness", fair[s], false);
      else
        out.add(v, names[s], "sum_rate", sum[s], true);
    }
    if (!fairness && var == "D_maxJ") {
      Samples gap(n);
      for (std::size_t i = 0; i < n; ++i) gap[i] = sum[2][i] - sum[3][i];
      out.add(v, "PC-unc", "evpi", gap, true);
    }
  }
}

void run_fig4e(const ExperimentSpec& spec, const std::vector<double>& sweep, Collector& out) {
  SystemConfig cfg = make_system(spec);
  cfg.validate();
  const PowerAllocation pd = uniform_power(cfg);
  const int n_max = static_cast<int>(*std::max_element(sweep.begin(), sweep.end()));
  for (double Nv : sweep) {
    const int N = static_cast<int>(Nv);
    if (N < 1) throw std::invalid_argument("fig4e: antenna counts must be >= 1");
    const auto n = static_cast<std::size_t>(spec.realizations);
    Samples none(n), pc(n), hyb(n), data(n);
    HybridOptions ho;
    ho.exec = Execution::Serial;  // realizations already fan out
    HybridOptions data_only = ho;
    data_only.attack_pilots = false;
    realizations(spec, Nv, [&](std::size_t i, Rng& r) {
      const Topology topo = sample_topology(r, cfg);
      const LargeScale ls = large_scale(topo, cfg);
      // common draws across N so that smaller arrays are sub-arrays
      const ScenarioSet all = build_scenarios(r.split(2), n_max, cfg.K, spec.scenarios);
      const ScenarioSet sc = restrict_antennas(all, N);
      none[i] = asymptotic_rates(ls, AttackVector::Zero(cfg.K), pd, cfg).sum_rate;
      pc[i] = p1_objective(p1_coefficients(ls, pd, cfg),
                           solve_p1_closed_form(p1_coefficients(ls, pd, cfg)));
      hyb[i] = solve_p6_saa(cfg, topo, pd, sc, ho).objective;
      data[i] = solve_p6_saa(cfg, topo, pd, sc, data_only).objective;
    });
    out.add(Nv, "noPC", "sum_rate", none, true);
    out.add(Nv, "PC-pi", "sum_rate", pc, true);
    out.add(Nv, "hybrid", "sum_rate", hyb, true);
    out.add(Nv, "dataJamming", "sum_rate", data, true);
  }
}

void run_fig4f(const ExperimentSpec& spec, const std::vector<double>& sweep, Collector& out) {
  for (double v : sweep) {
    SystemConfig cfg = make_system(spec);
    cfg.D_maxJ = v;
    cfg.validate();
    const PowerAllocation pd = uniform_power(cfg);
    const auto n = static_cast<std::size_t>(spec.realizations);
    const bool with_p4 = simplex_grid_size(cfg.K, spec.p4_grid) <= spec.p4_max_points;
    Samples s0(n), r0(n), s5(n), r5(n), s4(n), r4(n);
    realizations(spec, v, [&](std::size_t i, Rng& r) {
      const LargeScale ls = large_scale(sample_topology(r, cfg), cfg);
      const SecrecyCoefficients c = secrecy_coefficients(ls, pd, cfg);
      const auto eval = [&](const AttackVector& a, double& sec, double& rate) {
        const SecrecyReport rep = secrecy_report(ls, a, pd, cfg);
        sec = rep.max_secrecy;
        rate = rep.R.maxCoeff();
      };
      eval(AttackVector::Zero(cfg.K), s0[i], r0[i]);
      eval(solve_p5_greedy(c, spec.delta).alpha, s5[i], r5[i]);
      if (with_p4) eval(solve_p4_bruteforce(c, spec.p4_grid, Execution::Serial).alpha, s4[i], r4[i]);
    });
    out.add(v, "noPC", "max_secrecy", s0, true);
    out.add(v, "noPC", "max_rate", r0, true);
    out.add(v, "PC-Sec-P5", "max_secrecy", s5, true);
    out.add(v, "PC-Sec-P5", "max_rate", r5, true);
    if (with_p4) {
      out.add(v, "PC-Sec-P4", "max_secrecy", s4, true);
      out.add(v, "PC-Sec-P4", "max_rate", r4, true);
    } else {
      std::ostringstream os;
      os << "PC-Sec-P4 skipped at K = " << cfg.K << ": grid of "
         << simplex_grid_size(cfg.K, spec.p4_grid) << " points exceeds " << spec.p4_max_points;
      if (out.res.notes.empty() || out.res.notes.back() != os.str()) out.res.notes.push_back(os.str());
    }
  }
}

// Per-user samples for the CDF scenarios.
void run_cdf(const ExperimentSpec& spec, const std::vector<double>& sweep, bool secrecy,
             Collector& out) {
  for (double v : sweep) {
    SystemConfig cfg = make_system(spec);
    cfg.D_maxJ = v;
    cfg.validate();
    const PowerAllocation pd = uniform_power(cfg);
    const auto n = static_cast<std::size_t>(spec.realizations);
    const auto K = static_cast<std::size_t>(cfg.K);
    Samples base(n * K), att(n * K);
    realizations(spec, v, [&](std::size_t i, Rng& r) {
      const LargeScale ls = large_scale(sample_topology(r, cfg), cfg);
      Vec x0, x1;
      if (secrecy) {
        const AttackVector a = solve_p5_greedy(secrecy_coefficients(ls, pd, cfg), spec.delta).alpha;
        x0 = secrecy_report(ls, AttackVector::Zero(cfg.K), pd, cfg).Rs;
        x1 = secrecy_report(ls, a, pd, cfg).Rs;
      } else {
        const AttackVector a = solve_p1_closed_form(p1_coefficients(ls, pd, cfg));
        x0 = asymptotic_rates(ls, AttackVector::Zero(cfg.K), pd, cfg).R;
        x1 = asymptotic_rates(ls, a, pd, cfg).R;
      }
      for (std::size_t k = 0; k < K; ++k) {
        base[i * K + k] = x0(static_cast<Eigen::Index>(k));
        att[i * K + k] = x1(static_cast<Eigen::Index>(k));
      }
    });
    out.quantiles(v, "noPC", base);
    out.quantiles(v, secrecy ? "PC-Sec-P5" : "PC-pi", att);
  }
}

void run_fig4i(const ExperimentSpec& spec, const std::vector<double>& sweep, Collector& out) {
  std::vector<int> users = {spec.K};
  if (spec.K != 20) users.push_back(20);
  for (int K : users) {
    ExperimentSpec s = spec;
    s.K = K;
    SystemConfig cfg = make_system(s);
    cfg.D_maxJ = spec.D_maxJ > 0 ? spec.D_maxJ : cfg.D_max;
    cfg.validate();
    const PowerAllocation pd = uniform_power(cfg);
    const std::string label = K == spec.K ? "chance" : "chance-K20";
    for (double eps : sweep) {
      if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("fig4i: eps must be in (0, 1]");
      const auto n = static_cast<std::size_t>(spec.realizations);
      Samples thr(n), sec(n), zero(n);
      realizations(spec, eps, [&](std::size_t i, Rng& r) {
        const Topology topo = sample_topology(r, cfg);
        const LargeScale ls = large_scale(topo, cfg);
        const SecrecySolution sol =
            solve_p5_chance(chance_coefficients(cfg, topo.z_J, pd, eps), spec.delta);
        const SecrecyReport rep = secrecy_report(ls, sol.alpha, pd, cfg);
        thr[i] = std::log2(sol.value);
        sec[i] = rep.max_secrecy;
        zero[i] = static_cast<double>((rep.Rs.array() <= 0.0).count()) / cfg.K;
      });
      out.add(eps, label, "threshold", thr, true);
      out.add(eps, label, "max_secrecy", sec, true);
      out.add(eps, label, "zero_fraction", zero, false);
    }
  }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const ScenarioInfo& info = find_scenario(spec.scenario);
  const std::vector<double> sweep = spec.sweep.empty() ? info.default_sweep : spec.sweep;
  ExperimentResult res;
  const SystemConfig cfg = make_system(spec);
  Collector out{res, spec.unit == Unit::Mbps ? cfg.bandwidth_hz * cfg.duty_cycle() / 1e6 : 1.0};
  const std::string& id = info.id;
  if (id == "fig4a") {
    run_fig4a(spec, sweep, out);
  } else if (id == "fig4b" || id == "fig4c") {
    run_pc_family(spec, "D_maxJ", sweep, id == "fig4c", out);
  } else if (id == "fig4d") {
    ExperimentSpec s = spec;
    if (s.D_maxJ <= 0) s.D_maxJ = 250.0;
    run_pc_family(s, "L", sweep, false, out);
  } else if (id == "fig4e") {
    run_fig4e(spec, sweep, out);
  } else if (id == "fig4f") {
    run_fig4f(spec, sweep, out);
  } else if (id == "fig4g") {
    run_cdf(spec, sweep, false, out);
  } else if (id == "fig4h") {
    run_cdf(spec, sweep, true, out);
  } else {
    run_fig4i(spec, sweep, out);
  }
  return res;
}

void write_csv(const std::vector<ResultRow>& rows, std::ostream& os) {
  os << "sweep,scheme,metric,mean,stderr,n\n";
  os << std::setprecision(10);
  for (const auto& r : rows)
    os << r.sweep << ',' << r.scheme << ',' << r.metric << ',' << r.mean << ',' << r.se << ','
       << r.n << '\n';
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  if (rows.empty()) throw std::invalid_argument("emit_csv: no rows");
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  write_csv(rows, f);
  if (!f) throw std::runtime_error("write failed for " + path);
}

void write_cdf(std::vector<double> samples, std::ostream& os) {
  if (samples.empty()) throw std::invalid_argument("emit_cdf: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  os << "value,cdf\n" << std::setprecision(10);
  // one step per distinct value, at the rank of its last occurrence
  for (std::size_t i = 0; i < samples.size(); ++i)
    if (i + 1 == samples.size() || samples[i + 1] != samples[i])
      os << samples[i] << ',' << static_cast<double>(i + 1) / n << '\n';
}

void emit_cdf(const std::vector<double>& samples, const std::string& path) {
  if (samples.empty()) throw std::invalid_argument("emit_cdf: no samples");
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  write_cdf(samples, f);
  if (!f) throw std::runtime_error("write failed for " + path);
}

std::map<std::string, std::string> parse_config(std::istream& is) {
  std::map<std::string, std::string> kv;
  for (const auto& item : CLI::ConfigTOML().from_config(is)) {
    if (item.name == "++" || item.name == "--") continue;  // table markers
    std::string v;
    for (std::size_t i = 0; i < item.inputs.size(); ++i) v += (i ? "," : "") + item.inputs[i];
    kv[item.fullname()] = v;
  }
  return kv;
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot read config " + path);
  return parse_config(f);
}

namespace {

double to_double(const std::string& k, const std::string& v) {
  std::size_t pos = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size() || v.empty())
    throw std::invalid_argument("config key " + k + ": not a number: '" + v + "'");
  return d;
}

int to_int(const std::string& k, const std::string& v) {
  const double d = to_double(k, v);
  if (d != std::floor(d) || std::abs(d) > 2e9)
    throw std::invalid_argument("config key " + k + ": not an integer: '" + v + "'");
  return static_cast<int>(d);
}

}  // namespace

void apply_config(ExperimentSpec& spec, const std::map<std::string, std::string>& kv) {
  if (auto it = kv.find("scale"); it != kv.end()) {
    if (it->second == "desk")
      apply_scale(spec, Scale::Desk);
    else if (it->second == "paper")
      apply_scale(spec, Scale::Paper);
    else
      throw std::invalid_argument("config key scale: expected desk or paper");
  }
  for (const auto& [k, v] : kv) {
    if (k == "scale") continue;
    if (k == "scenario") spec.scenario = v;
    else if (k == "seed") spec.seed = static_cast<std::uint64_t>(std::stoull(v));
    else if (k == "realizations") spec.realizations = to_int(k, v);
    else if (k == "out") spec.out = v;
    else if (k == "unit") {
      if (v == "se") spec.unit = Unit::SE;
      else if (v == "mbps") spec.unit = Unit::Mbps;
      else throw std::invalid_argument("config key unit: expected se or mbps");
    } else if (k == "sweep") {
      spec.sweep.clear();
      std::stringstream ss(v);
      std::string tok;
      while (std::getline(ss, tok, ',')) spec.sweep.push_back(to_double(k, tok));
      if (spec.sweep.empty()) throw std::invalid_argument("config key sweep: empty range");
    }
    else if (k == "system.M") spec.M = to_int(k, v);
    else if (k == "system.K") spec.K = to_int(k, v);
    else if (k == "system.L") spec.L = to_int(k, v);
    else if (k == "system.gamma") spec.gamma = to_double(k, v);
    else if (k == "system.A") spec.A = to_double(k, v);
    else if (k == "system.P_A_dBm") spec.P_A_dBm = to_double(k, v);
    else if (k == "system.P_pilot_dBm") spec.P_pilot_dBm = to_double(k, v);
    else if (k == "system.P_J_dBm") spec.P_J_dBm = to_double(k, v);
    else if (k == "system.noise_dBm") spec.noise_dBm = to_double(k, v);
    else if (k == "system.D_min") spec.D_min = to_double(k, v);
    else if (k == "system.D_max") spec.D_max = to_double(k, v);
    else if (k == "system.D_maxJ") spec.D_maxJ = to_double(k, v);
    else if (k == "system.bandwidth_hz") spec.bandwidth_hz = to_double(k, v);
    else if (k == "system.t_p") spec.t_p = to_double(k, v);
    else if (k == "system.t_d") spec.t_d = to_double(k, v);
    else if (k == "solver.grid_n") spec.grid_n = to_int(k, v);
    else if (k == "solver.scenarios") spec.scenarios = to_int(k, v);
    else if (k == "solver.delta") spec.delta = to_double(k, v);
    else if (k == "solver.p4_grid") spec.p4_grid = to_int(k, v);
    else if (k == "solver.p4_max_points") spec.p4_max_points = static_cast<std::size_t>(to_double(k, v));
    else if (k == "solver.validation_draws") spec.validation_draws = to_int(k, v);
    else if (k == "solver.execution") {
      if (v == "serial") spec.exec = Execution::Serial;
      else if (v == "parallel") spec.exec = Execution::Parallel;
      else throw std::invalid_argument("config key solver.execution: expected serial or parallel");
    } else {
      throw std::invalid_argument("unknown config key '" + k + "'");
    }
  }
}

}  // namespace pca
