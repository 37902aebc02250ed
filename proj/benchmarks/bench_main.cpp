#include <benchmark/benchmark.h>

#include <vector>

#include "tripec/carry_graph.hpp"
#include "tripec/divisibility.hpp"
#include "tripec/weight_dist.hpp"

namespace {

using namespace tripec;

void BM_DualDistribution(benchmark::State& state) {
  const auto f = build_field(static_cast<int>(state.range(0)));
  DualOptions opts;
  opts.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(dual_trace_distribution(f, 3, 13, opts));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << (3 * state.range(0))));
}
BENCHMARK(BM_DualDistribution)->Args({5, 1})->Args({7, 1})->Args({7, 0})->Unit(benchmark::kMillisecond);

void BM_MaxWeightGain(benchmark::State& state) {
  const std::vector<std::int64_t> d{3, 13};
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(max_weight_gain(m, d));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << (2 * m)));
}
BENCHMARK(BM_MaxWeightGain)->Arg(7)->Arg(9)->Arg(11)->Unit(benchmark::kMillisecond);

void BM_NuSweep(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sweep_nu_sequences(m));
}
BENCHMARK(BM_NuSweep)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_BuildDigraph(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_digraph());
}
BENCHMARK(BM_BuildDigraph);

void BM_WalkSearch(benchmark::State& state) {
  const auto g = build_digraph();
  WalkSearchOptions opts;
  opts.max_length = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(search_closed_P_walks(g, opts));
}
BENCHMARK(BM_WalkSearch)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
