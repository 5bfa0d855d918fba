#include "sandpile/circulant.hpp"
#include "sandpile/closed_form.hpp"
#include "sandpile/graphs.hpp"
#include "sandpile/smith.hpp"

#include <benchmark/benchmark.h>

using namespace sandpile;

static void BM_SandpileSnfDeBruijn(benchmark::State& state) {
  const Digraph g = build_graph({Family::DeBruijn, state.range(0), state.range(1)});
  for (auto _ : state) benchmark::DoNotOptimize(sandpile_group_snf(g, 0));
}
BENCHMARK(BM_SandpileSnfDeBruijn)->Args({16, 2})->Args({64, 2})->Args({64, 9})->Args({128, 3});

static void BM_SandpileSnfKautz(benchmark::State& state) {
  const Digraph g = build_graph({Family::Kautz, state.range(0), state.range(1)});
  for (auto _ : state) benchmark::DoNotOptimize(sandpile_group_snf(g, 0));
}
BENCHMARK(BM_SandpileSnfKautz)->Args({64, 2})->Args({64, 9});

static void BM_SpanningTreeCount(benchmark::State& state) {
  const Digraph g = build_graph({Family::DeBruijn, state.range(0), state.range(1)});
  for (auto _ : state) benchmark::DoNotOptimize(spanning_tree_count(g, 0));
}
BENCHMARK(BM_SpanningTreeCount)->Args({64, 2})->Args({64, 9})->Args({128, 3});

static void BM_SnfWithTransforms(benchmark::State& state) {
  const IntegerMatrix m = epsilon_relation_matrix(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SnfWithTransforms)->Args({32, 2})->Args({64, 3});

static void BM_ClosedFormDeBruijn(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sandpile_group_db(state.range(0), state.range(1)));
}
BENCHMARK(BM_ClosedFormDeBruijn)->Args({64, 2})->Args({1000, 3})->Args({100000, 7});

static void BM_ClosedFormKautz(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sandpile_group_kautz(state.range(0), state.range(1)));
}
BENCHMARK(BM_ClosedFormKautz)->Args({64, 2})->Args({100000, 7});

static void BM_CirculantFormula(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(circulant_group(state.range(0), state.range(1)));
}
BENCHMARK(BM_CirculantFormula)->Args({64, 2})->Args({1000, 3});

static void BM_BruteForceUnitGroup(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bruteforce_unit_group(state.range(0), state.range(1)));
}
BENCHMARK(BM_BruteForceUnitGroup)->Args({12, 2})->Args({16, 2})->Args({8, 3})->Unit(benchmark::kMillisecond);

static void BM_BruteForceNormalCount(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bruteforce_count_normal(state.range(1), state.range(0)));
}
BENCHMARK(BM_BruteForceNormalCount)->Args({12, 2})->Args({7, 3})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
