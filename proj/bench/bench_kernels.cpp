// Serial reference vs OpenMP path for the Monte Carlo and solver kernels.
#include <benchmark/benchmark.h>

#include "pca/attack_optim.hpp"
#include "pca/harness.hpp"
#include "pca/hybrid.hpp"
#include "pca/rates.hpp"
#include "pca/secrecy_optim.hpp"

using namespace pca;

namespace {

Execution mode(const benchmark::State& st) {
  return st.range(0) ? Execution::Parallel : Execution::Serial;
}

SystemConfig system_for(int K, double D_maxJ = 250.0) {
  ExperimentSpec s;
  s.K = K;
  s.D_maxJ = D_maxJ;
  return make_system(s);
}

void BM_Experiment(benchmark::State& st) {
  ExperimentSpec s;
  s.scenario = "fig4b";
  s.sweep = {250};
  s.realizations = 200;
  s.exec = mode(st);
  for (auto _ : st) benchmark::DoNotOptimize(run_experiment(s).rows.size());
}
BENCHMARK(BM_Experiment)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ExactRates(benchmark::State& st) {
  ExperimentSpec s;
  s.scenario = "fig4a";
  s.sweep = {256};
  s.realizations = 100;
  s.exec = mode(st);
  for (auto _ : st) benchmark::DoNotOptimize(run_experiment(s).rows.size());
}
BENCHMARK(BM_ExactRates)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Evpi(benchmark::State& st) {
  const SystemConfig cfg = system_for(10);
  const PowerAllocation pd = uniform_power(cfg);
  for (auto _ : st) benchmark::DoNotOptimize(evpi(cfg, pd, 2000, Rng(1), 32, mode(st)).mean);
}
BENCHMARK(BM_Evpi)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_P4Grid(benchmark::State& st) {
  const SystemConfig cfg = system_for(4, 325.0);
  Rng rng(2);
  const SecrecyCoefficients c =
      secrecy_coefficients(large_scale(sample_topology(rng, cfg), cfg), uniform_power(cfg), cfg);
  for (auto _ : st) benchmark::DoNotOptimize(solve_p4_bruteforce(c, 60, mode(st)).value);
}
BENCHMARK(BM_P4Grid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_HybridSaa(benchmark::State& st) {
  const SystemConfig cfg = system_for(10);
  Rng rng(3);
  const Topology topo = sample_topology(rng, cfg);
  const ScenarioSet s = build_scenarios(Rng(4), 2, cfg.K, 200);
  HybridOptions opt;
  opt.exec = mode(st);
  for (auto _ : st)
    benchmark::DoNotOptimize(solve_p6_saa(cfg, topo, uniform_power(cfg), s, opt).objective);
}
BENCHMARK(BM_HybridSaa)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ChanceValidation(benchmark::State& st) {
  const SystemConfig cfg = system_for(10, 750.0);
  const PowerAllocation pd = uniform_power(cfg);
  const AttackVector a = AttackVector::Constant(cfg.K, 0.1);
  for (auto _ : st)
    benchmark::DoNotOptimize(validate_chance(cfg, 200.0, pd, a, 2.0, 20000, Rng(5), mode(st)).n);
}
BENCHMARK(BM_ChanceValidation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
