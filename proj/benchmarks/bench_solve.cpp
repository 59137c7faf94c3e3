#include <benchmark/benchmark.h>

#include "ccuc/formulation.hpp"
#include "ccuc/risk.hpp"
#include "ccuc/scenarios.hpp"
#include "ccuc/solver.hpp"

namespace {

using namespace ccuc;

const Distribution& errors() {
  static const Distribution d = Distribution::parse("gaussian:0.05:0.5");
  return d;
}

void BM_SampleScenarios(benchmark::State& state) {
  const UCInstance inst = synth_instance({10, 24, 10, 20, 3}, 1);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_scenarios(inst, n, errors(), 7));
}
BENCHMARK(BM_SampleScenarios)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_ReduceScenarios(benchmark::State& state) {
  const UCInstance inst = synth_instance({10, 24, 10, 20, 3}, 1);
  const ScenarioSet scen = sample_scenarios(inst, static_cast<std::size_t>(state.range(0)), errors(), 7);
  for (auto _ : state) benchmark::DoNotOptimize(reduce_scenarios(scen));
}
BENCHMARK(BM_ReduceScenarios)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

void BM_BuildSuc(benchmark::State& state) {
  const UCInstance inst = synth_instance({10, 24, 10, 20, 3}, 1);
  const ScenarioSet scen = sample_scenarios(inst, static_cast<std::size_t>(state.range(0)), errors(), 7);
  for (auto _ : state) benchmark::DoNotOptimize(build_suc(inst, scen));
}
BENCHMARK(BM_BuildSuc)->Arg(24)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_EmpiricalViolation(benchmark::State& state) {
  const UCInstance inst = synth_instance({5, 6, 2, 4, 1}, 1);
  const SolveResult r = solve_uc(inst, sample_scenarios(inst, 50, errors(), 1));
  const ScenarioSet test = sample_scenarios(inst, 10000, errors(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(empirical_violation(inst, *r.solution, test));
}
BENCHMARK(BM_EmpiricalViolation)->Unit(benchmark::kMillisecond);

// Small s-UC solved in full and over its reduced set.
void BM_SolveSmall(benchmark::State& state) {
  const UCInstance inst = synth_instance({5, 6, 2, 4, 1}, 3);
  const ScenarioSet scen = sample_scenarios(inst, 200, errors(), 5);
  const ScenarioSet used = state.range(0) ? scen.subset(reduce_scenarios(scen)) : scen;
  for (auto _ : state) benchmark::DoNotOptimize(solve_uc(inst, used));
  state.SetLabel(state.range(0) ? "reduced" : "full");
}
BENCHMARK(BM_SolveSmall)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
