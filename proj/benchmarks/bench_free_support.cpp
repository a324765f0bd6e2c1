#include <benchmark/benchmark.h>

#include "ebits/free_support.hpp"

namespace {

void BM_KlBall(benchmark::State& state) {
  const auto cert = ebits::detect_free_support(ebits::states::weighted_w(0.5, 0.3, 0.2));
  const double r = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(ebits::kl_ball_minmax_entropy(cert->measured, r));
}

// The grid used by the trirate command on W.
void BM_WRateCurve(benchmark::State& state) {
  const auto grid = ebits::make_grid(0.0, 0.7, 0.005);
  for (auto _ : state) benchmark::DoNotOptimize(ebits::sc_rate_curve_free(ebits::states::w(), grid));
}

}  // namespace

BENCHMARK(BM_KlBall)->Arg(0)->Arg(5)->Arg(30)->Arg(100);
BENCHMARK(BM_WRateCurve)->Unit(benchmark::kMillisecond);
