#include <benchmark/benchmark.h>

#include "ebits/povm.hpp"

namespace {

void BM_BuildPovmW(benchmark::State& state) {
  const auto s = ebits::tensor_power(ebits::states::w(), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ebits::build_povm(s, 1));
}

void BM_SliceEntropies(benchmark::State& state) {
  const auto s = ebits::states::random({3, 3, 3}, 7);
  for (auto _ : state) benchmark::DoNotOptimize(ebits::sample_slice_entropies(s, 1000, 1));
}

}  // namespace

BENCHMARK(BM_BuildPovmW)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SliceEntropies)->Unit(benchmark::kMillisecond);
