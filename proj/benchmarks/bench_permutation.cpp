#include <benchmark/benchmark.h>

#include <random>

#include "bench_common.hpp"
#include "cmiknn/permutation.hpp"

using namespace cmiknn;

static void BM_SchemeBuild(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int k_perm = static_cast<int>(state.range(1));
    const VariableBlock z = bench::rank_columns(n, 1, 7);
    for (auto _ : state) {
        LocalPermutationScheme scheme(z, k_perm);
        benchmark::DoNotOptimize(scheme.sample_count());
    }
}
BENCHMARK(BM_SchemeBuild)->Args({1000, 5})->Args({2000, 5})->Args({1000, 50});

static void BM_PermutationDraw(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int k_perm = static_cast<int>(state.range(1));
    const VariableBlock z = bench::rank_columns(n, 1, 8);
    const LocalPermutationScheme scheme(z, k_perm);
    std::mt19937_64 rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(scheme.generate(rng).duplicate_count);
    }
}
BENCHMARK(BM_PermutationDraw)->Args({1000, 5})->Args({2000, 5})->Args({1000, 50});
