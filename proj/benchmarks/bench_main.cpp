#include <benchmark/benchmark.h>

#include "semiclassic/oracle.hpp"
#include "semiclassic/reflection.hpp"
#include "semiclassic/special_fn.hpp"
#include "semiclassic/wkb.hpp"

using namespace semiclassic;

namespace {

ScatteringProblem eckart(double energy) {
  return ScatteringProblem{PhysicalContext{}, EckartBarrier{1.0, 1.0, 0.0}, energy,
                           Interval{-20.0, 20.0}};
}

void BM_AirySeries(benchmark::State& state) {
  const double z = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(airy(z));
}
BENCHMARK(BM_AirySeries)->Arg(-50)->Arg(0)->Arg(50);

void BM_AiryAsymptotic(benchmark::State& state) {
  const double z = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(airy_asymptotic(z));
}
BENCHMARK(BM_AiryAsymptotic)->Arg(-40)->Arg(40);

void BM_BarrierIntegral(benchmark::State& state) {
  const auto p = eckart(0.3);
  for (auto _ : state) benchmark::DoNotOptimize(barrier_integral(p));
}
BENCHMARK(BM_BarrierIntegral);

void BM_ExactOracle(benchmark::State& state) {
  const auto p = eckart(0.3);
  OracleConfig cfg;
  cfg.grid_points = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_scattering_exact(p, cfg));
}
BENCHMARK(BM_ExactOracle)->Arg(20001)->Arg(40001)->Unit(benchmark::kMillisecond);

void BM_OnceReflected(benchmark::State& state) {
  const ScatteringProblem p{PhysicalContext{}, GaussianBump{0.1, 1.0, 0.0}, 2.0,
                            Interval{-12.0, 12.0}};
  for (auto _ : state) benchmark::DoNotOptimize(once_reflected_coefficient(p));
}
BENCHMARK(BM_OnceReflected)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
