#include <benchmark/benchmark.h>

#include <random>

#include "corrbell/bellgen.hpp"
#include "corrbell/infocrit.hpp"
#include "corrbell/lhv.hpp"
#include "corrbell/wernerlab.hpp"

using namespace corrbell;

namespace {

DensityMatrix werner(int n, double v) { return build_preset({PresetKind::kWernerGhz, n, v}); }

SettingsPair random_settings(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2 * M_PI);
  std::vector<double> angles(static_cast<std::size_t>(4 * n));
  for (double& a : angles) a = u(rng);
  return SettingsPair::from_angles(angles);
}

}  // namespace

static void BM_TensorDirectTrace(benchmark::State& state) {
  const DensityMatrix rho = werner(static_cast<int>(state.range(0)), 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(correlation_tensor(rho, TensorMethod::kDirectTrace));
}
BENCHMARK(BM_TensorDirectTrace)->DenseRange(2, 7);

static void BM_TensorContraction(benchmark::State& state) {
  const DensityMatrix rho = werner(static_cast<int>(state.range(0)), 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(correlation_tensor(rho, TensorMethod::kContraction));
}
BENCHMARK(BM_TensorContraction)->DenseRange(2, 9);

static void BM_Reconstruction(benchmark::State& state) {
  const CorrelationTensor t = correlation_tensor(werner(static_cast<int>(state.range(0)), 0.7));
  for (auto _ : state) benchmark::DoNotOptimize(density_from_tensor(t));
}
BENCHMARK(BM_Reconstruction)->DenseRange(2, 7);

static void BM_GeneralBellLhs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  const CorrelationTensor t = correlation_tensor(werner(n, 0.7));
  const SettingsPair s = random_settings(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(general_bell_lhs(correlation_table(t, s)).lhs);
}
BENCHMARK(BM_GeneralBellLhs)->DenseRange(2, 8);

static void BM_MaximizeCorrInfo(benchmark::State& state) {
  const CorrelationTensor t = correlation_tensor(werner(static_cast<int>(state.range(0)), 0.7));
  for (auto _ : state) benchmark::DoNotOptimize(maximize_corr_info(t).max_total);
}
BENCHMARK(BM_MaximizeCorrInfo)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_MaximizeGeneralBell(benchmark::State& state) {
  const CorrelationTensor t = correlation_tensor(werner(static_cast<int>(state.range(0)), 0.7));
  for (auto _ : state) benchmark::DoNotOptimize(maximize_general_bell(t).evaluation.lhs);
}
BENCHMARK(BM_MaximizeGeneralBell)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_ConstructLhv(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CorrelationTable table(n, std::vector<double>(std::size_t{1} << n, 0.5 / (1 << n)));
  for (auto _ : state) benchmark::DoNotOptimize(construct_lhv(table).atoms.size());
}
BENCHMARK(BM_ConstructLhv)->DenseRange(2, 8);

static void BM_VisibilityScan(benchmark::State& state) {
  ScanOptions opts;
  opts.grid = 11;
  for (auto _ : state) benchmark::DoNotOptimize(visibility_scan(static_cast<int>(state.range(0)), opts).size());
}
BENCHMARK(BM_VisibilityScan)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
