#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "cmiknn/neighbor_index.hpp"

using namespace cmiknn;

static void BM_IndexBuild(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int d = static_cast<int>(state.range(1));
    const VariableBlock pts = bench::rank_columns(n, d, 1);
    for (auto _ : state) {
        NeighborIndex index(pts);
        benchmark::DoNotOptimize(index.size());
    }
}
BENCHMARK(BM_IndexBuild)->Args({1000, 3})->Args({2000, 3})->Args({1000, 9});

static void BM_KthDistance(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int k = static_cast<int>(state.range(1));
    const VariableBlock pts = bench::rank_columns(n, 3, 2);
    const NeighborIndex index(pts);
    int i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(index.kth_distance_excluding_self(i, k));
        i = (i + 1) % n;
    }
}
BENCHMARK(BM_KthDistance)->Args({1000, 10})->Args({1000, 200})->Args({2000, 400});

static void BM_StrictCount(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const VariableBlock pts = bench::rank_columns(n, 2, 3);
    const NeighborIndex index(pts);
    const double radius = n * 0.15;
    int i = 0;
    for (auto _ : state) {
        const std::vector<double> center(pts.row(i), pts.row(i) + 2);
        benchmark::DoNotOptimize(index.count_strictly_within(center, radius));
        i = (i + 1) % n;
    }
}
BENCHMARK(BM_StrictCount)->Arg(1000)->Arg(2000);
