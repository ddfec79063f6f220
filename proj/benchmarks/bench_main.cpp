#include <benchmark/benchmark.h>

#include "coarsegraph/cactus.hpp"
#include "coarsegraph/generate.hpp"
#include "coarsegraph/metric.hpp"
#include "coarsegraph/minor.hpp"
#include "coarsegraph/series_parallel.hpp"

using namespace cg;

static void BM_BallOnCycle(benchmark::State& state) {
    Graph g = cycle_graph(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(ball_v(g, 0, state.range(0) / 4));
}
BENCHMARK(BM_BallOnCycle)->Arg(1000)->Arg(10000);

static void BM_RadOfSet(benchmark::State& state) {
    Graph g = grid_graph(20, 20);
    VertexSet u = ball_v(g, 0, 12);
    for (auto _ : state) benchmark::DoNotOptimize(rad_of_set(g, u));
}
BENCHMARK(BM_RadOfSet);

static void BM_DecomposeCactusCycle(benchmark::State& state) {
    Graph g = cycle_graph(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(decompose_cactus(g, 1));
}
BENCHMARK(BM_DecomposeCactusCycle)->Arg(500)->Arg(2000);

static void BM_MinorFreeGrid(benchmark::State& state) {
    Graph g = grid_graph(30, 30);
    for (auto _ : state) {
        benchmark::DoNotOptimize(is_minor_free(g, Pattern::K4));
        benchmark::DoNotOptimize(is_minor_free(g, Pattern::K4Minus));
    }
}
BENCHMARK(BM_MinorFreeGrid);

static void BM_BruteForceK4(benchmark::State& state) {
    Graph g = gnp_graph(9, 0.4, 11);
    Graph k4 = pattern_graph(Pattern::K4);
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_fat_minor(g, k4, 0));
}
BENCHMARK(BM_BruteForceK4);

static void BM_DecomposeSeriesParallelPath(benchmark::State& state) {
    Graph g = path_graph(400);
    for (auto _ : state) benchmark::DoNotOptimize(decompose_series_parallel(g, 1));
}
BENCHMARK(BM_DecomposeSeriesParallelPath);

BENCHMARK_MAIN();
