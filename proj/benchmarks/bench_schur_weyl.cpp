#include <benchmark/benchmark.h>

#include "ebits/schur_weyl.hpp"

namespace {

void BM_SpectrumTableW(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ebits::spectrum_table(ebits::states::w(), n));
}

void BM_YoungProjectorDense(benchmark::State& state) {
  const auto lambda = ebits::YoungData::make({3, 2});
  for (auto _ : state) benchmark::DoNotOptimize(ebits::YoungProjector(lambda, 3).dense());
}

void BM_GeneralRateEstimate(benchmark::State& state) {
  const auto table = ebits::spectrum_table(ebits::states::w(), 5);
  for (auto _ : state) benchmark::DoNotOptimize(ebits::general_sc_rate_estimate(table, 0.4));
}

}  // namespace

BENCHMARK(BM_SpectrumTableW)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_YoungProjectorDense)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GeneralRateEstimate);
