#include <benchmark/benchmark.h>

#include "ccuc/sample_complexity.hpp"

namespace {

void BM_BinomialTail(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const auto h = static_cast<std::uint64_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(ccuc::binomial_tail(n, 0.05, h));
}
BENCHMARK(BM_BinomialTail)->Args({455, 24})->Args({1'523'320, 75168});

void BM_RequiredSampleSize(benchmark::State& state) {
  const auto h = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ccuc::required_sample_size({0.01, 1e-4, h}));
}
BENCHMARK(BM_RequiredSampleSize)->Arg(24)->Arg(75168)->Unit(benchmark::kMillisecond);

void BM_EpsilonBound(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ccuc::epsilon_bound(1000, 1e-4, 24));
}
BENCHMARK(BM_EpsilonBound);

}  // namespace
BENCHMARK_MAIN();
