#include <benchmark/benchmark.h>

#include "casimir/closed_forms.hpp"
#include "casimir/kernel.hpp"
#include "casimir/pairwise.hpp"

namespace {

using namespace casimir;

void BM_FrequencyIntegral(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(frequency_integral());
}
BENCHMARK(BM_FrequencyIntegral);

void BM_ClosedForms(benchmark::State& state) {
  double off = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(energy_cyl_cyl(1, 1, 3, 1));
    benchmark::DoNotOptimize(energy_eccentric(0.5, 2, off, 1));
    benchmark::DoNotOptimize(force_eccentric(0.5, 2, off, 1));
    benchmark::DoNotOptimize(continue_cyl_cyl_to_contained(0.5, 2, off, 1));
  }
}
BENCHMARK(BM_ClosedForms);

void BM_EccentricSeries(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(eccentric_series(0.3, 1, 0.2, 1, order, order));
  }
}
BENCHMARK(BM_EccentricSeries)->Arg(10)->Arg(40)->Arg(100);

void BM_EccentricBruteForce(benchmark::State& state) {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-5;
  const auto mat = MaterialPair::from_coupling(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(energy_pair_2d(Disk{{0.5, 0}, 0.5}, ExteriorDisk{2}, mat, cfg));
  }
}
BENCHMARK(BM_EccentricBruteForce)->Unit(benchmark::kMillisecond);

void BM_SpherePlaneBruteForce(benchmark::State& state) {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-5;
  const auto mat = MaterialPair::from_coupling(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(energy_pair_3d(Ball{{0, 0, 0}, 1}, HalfSpace{2}, mat, cfg));
  }
}
BENCHMARK(BM_SpherePlaneBruteForce)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
