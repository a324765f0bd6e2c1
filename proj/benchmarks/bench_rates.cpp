#include <vector>

#include <benchmark/benchmark.h>

#include "ebits/rates.hpp"

namespace {

const std::vector<double> kSpectrum{0.5, 0.25, 0.15, 0.1};

void BM_DirectRate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ebits::bipartite_direct_rate(kSpectrum, 0.2));
}

void BM_ScRate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ebits::bipartite_sc_rate(kSpectrum, 0.2));
}

void BM_ScFidelityTransform(benchmark::State& state) {
  const auto grid = ebits::make_grid(0.0, 3.0, 0.01);
  const auto curve = ebits::RateCurve::sample(ebits::CurveKind::StrongConverse, grid,
                                              [](double r) { return ebits::bipartite_sc_rate(kSpectrum, r); });
  for (auto _ : state) benchmark::DoNotOptimize(ebits::sc_fidelity_from_probability(curve, 2.5));
}

}  // namespace

BENCHMARK(BM_DirectRate);
BENCHMARK(BM_ScRate);
BENCHMARK(BM_ScFidelityTransform);
