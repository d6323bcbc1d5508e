// Serial reference vs OpenMP for the sample-parallel sweeps.

#include <benchmark/benchmark.h>

#include "finsler/analysis.hpp"

namespace {

using namespace finsler;

ExecMode mode_of(const benchmark::State& state) {
  return state.range(0) == 0 ? ExecMode::serial : ExecMode::openmp;
}

void BM_VerifyIdentities(benchmark::State& state) {
  const MetricSpec spec = lookup_metric("funk");
  const FamilyParams params{{0.3, -0.2}};
  for (auto _ : state) benchmark::DoNotOptimize(verify_identities(spec, params, 16, mode_of(state)));
  state.SetLabel(state.range(0) == 0 ? "serial" : "openmp");
}
BENCHMARK(BM_VerifyIdentities)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& state) {
  const MetricSpec spec = lookup_metric("randers-nonconst");
  for (auto _ : state) benchmark::DoNotOptimize(classify(spec, 16, {}, mode_of(state)));
  state.SetLabel(state.range(0) == 0 ? "serial" : "openmp");
}
BENCHMARK(BM_Classify)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FlagSweep(benchmark::State& state) {
  const MetricSpec spec = lookup_metric("riemannian-sphere");
  for (auto _ : state) benchmark::DoNotOptimize(sample_flags(spec, 32, mode_of(state)));
  state.SetLabel(state.range(0) == 0 ? "serial" : "openmp");
}
BENCHMARK(BM_FlagSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_GeodesicPaths(benchmark::State& state) {
  const MetricSpec spec = lookup_metric("quartic");
  PathConfig cfg;
  cfg.count = 4;
  cfg.t_max = 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(theorem3_residual(spec, 1.0, cfg, mode_of(state)));
  state.SetLabel(state.range(0) == 0 ? "serial" : "openmp");
}
BENCHMARK(BM_GeodesicPaths)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
