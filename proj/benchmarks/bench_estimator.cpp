#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "cmiknn/ci_test.hpp"
#include "cmiknn/estimator.hpp"

using namespace cmiknn;

static void BM_CmiEstimate(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int dz = static_cast<int>(state.range(1));
    const int k = static_cast<int>(state.range(2));
    const VariableBlock x = bench::rank_columns(n, 1, 1);
    const VariableBlock y = bench::rank_columns(n, 1, 2);
    const VariableBlock z = bench::rank_columns(n, dz, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cmi_knn(x, y, z, k).value);
    }
}
BENCHMARK(BM_CmiEstimate)
    ->Args({500, 1, 100})
    ->Args({1000, 1, 200})
    ->Args({1000, 8, 200})
    ->Args({2000, 1, 400});

static void BM_CiTest(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int surrogates = static_cast<int>(state.range(1));
    const VariableBlock x = bench::rank_columns(n, 1, 4);
    const VariableBlock y = bench::rank_columns(n, 1, 5);
    const VariableBlock z = bench::rank_columns(n, 1, 6);
    CITestConfig cfg;
    cfg.k_cmi = n / 5;
    cfg.k_perm = 5;
    cfg.num_surrogates = surrogates;
    cfg.workers = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ci_test(x, y, z, cfg).p_value);
    }
}
BENCHMARK(BM_CiTest)->Args({500, 25})->Args({1000, 25})->Unit(benchmark::kMillisecond);
