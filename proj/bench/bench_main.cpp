// Serial reference vs. OpenMP kernels on the same inputs.
#include <benchmark/benchmark.h>

#include <random>

#include "pbx/cone_lab.hpp"
#include "pbx/extremes.hpp"
#include "pbx/oracle.hpp"

namespace {

pbx::PBox bench_pbox(std::size_t n) {
  // Deterministic p-box with many extreme points: bounds on a 1/(2n) grid.
  const long den = static_cast<long>(2 * n);
  pbx::RationalVector lo;
  pbx::RationalVector up;
  for (std::size_t i = 1; i <= n; ++i) {
    const long k = static_cast<long>(i);
    lo.emplace_back(std::min(2 * k - 2, den), den);
    up.emplace_back(std::min(2 * k + 1, den), den);
  }
  lo.back() = 1;
  up.back() = 1;
  return pbx::PBox(pbx::Domain::integers(n), lo, up);
}

pbx::Exec exec_of(const benchmark::State& state) {
  return state.range(1) ? pbx::Exec::Parallel : pbx::Exec::Serial;
}

void BM_EnumerateMescs(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pbx::enumerate_mescs(n, exec_of(state)));
}

void BM_StructuralExtremes(benchmark::State& state) {
  const auto p = bench_pbox(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pbx::enumerate_extremes(p, pbx::Method::Structural, exec_of(state)));
}

void BM_BfsExtremes(benchmark::State& state) {
  const auto p = bench_pbox(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pbx::enumerate_extremes(p, pbx::Method::Bfs, exec_of(state)));
}

void BM_Oracle(benchmark::State& state) {
  const auto p = bench_pbox(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pbx::oracle::oracle_extremes(p, pbx::oracle::Mode::Pruned, exec_of(state)));
  }
}

void BM_Fan(benchmark::State& state) {
  const auto p = bench_pbox(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pbx::build_fan(p, exec_of(state)));
}

}  // namespace

BENCHMARK(BM_EnumerateMescs)->ArgsProduct({{8, 10}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StructuralExtremes)->ArgsProduct({{7, 9}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BfsExtremes)->ArgsProduct({{7, 9}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Oracle)->ArgsProduct({{7, 9}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Fan)->ArgsProduct({{6, 7}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
