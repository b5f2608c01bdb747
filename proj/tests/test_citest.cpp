#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "cmiknn/ci_test.hpp"
#include "cmiknn/synth.hpp"
#include "support/test_util.hpp"

using namespace cmiknn;

namespace {

SyntheticData small_gaussian(std::uint64_t seed, int n = 120, bool dependent = false) {
    ModelSpec spec;
    spec.family = ModelFamily::gaussian;
    spec.n = n;
    spec.d_z = 1;
    spec.c = 0.6;
    spec.dependent = dependent;
    spec.seed = seed;
    return generate(spec);
}

}  // namespace

TEST_CASE("p-value counts the null values at or above the statistic") {
    const std::vector<double> null{0.1, 0.2, 0.3, 0.4};
    CHECK(p_value_from_null(0.05, null) == 1.0);   // below every null value
    CHECK(p_value_from_null(0.9, null) == 0.0);    // above every null value
    CHECK(p_value_from_null(0.25, null) == 0.5);
    CHECK(p_value_from_null(0.2, null) == 0.75);   // ties count toward the null
    CHECK_THROWS_AS(p_value_from_null(0.5, std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("reported p-value recomputes exactly from the returned null values") {
    const SyntheticData data = small_gaussian(21);
    CITestConfig cfg;
    cfg.k_cmi = 20;
    cfg.k_perm = 5;
    cfg.num_surrogates = 64;
    cfg.seed = 7;
    const CITestResult result = ci_test(data.x, data.y, data.z, cfg);
    REQUIRE(result.null_values.size() == 64);
    CHECK(result.p_value == p_value_from_null(result.statistic, result.null_values));
}

TEST_CASE("results are byte-identical across worker counts") {
    const SyntheticData data = small_gaussian(3);
    CITestConfig cfg;
    cfg.k_cmi = 24;
    cfg.k_perm = 5;
    cfg.num_surrogates = 48;
    cfg.seed = 99;

    cfg.workers = 1;
    const CITestResult serial = ci_test(data.x, data.y, data.z, cfg);
    for (int workers : {4, 8}) {
        cfg.workers = workers;
        const CITestResult parallel = ci_test(data.x, data.y, data.z, cfg);
        REQUIRE(parallel.statistic == serial.statistic);
        REQUIRE(parallel.p_value == serial.p_value);
        REQUIRE(parallel.null_values == serial.null_values);
    }
}

TEST_CASE("identical seeds reproduce the full result") {
    const SyntheticData data = small_gaussian(8);
    CITestConfig cfg;
    cfg.k_cmi = 12;
    cfg.k_perm = 5;
    cfg.num_surrogates = 32;
    cfg.seed = 1234;
    const CITestResult a = ci_test(data.x, data.y, data.z, cfg);
    const CITestResult b = ci_test(data.x, data.y, data.z, cfg);
    REQUIRE(a.statistic == b.statistic);
    REQUIRE(a.null_values == b.null_values);
    REQUIRE(a.p_value == b.p_value);
}

TEST_CASE("null_distribution exposes the surrogate values") {
    const SyntheticData data = small_gaussian(5);
    CITestConfig cfg;
    cfg.k_cmi = 12;
    cfg.k_perm = 5;
    cfg.num_surrogates = 1;
    cfg.seed = 2;
    const NullDistribution null = null_distribution(data.x, data.y, data.z, cfg);
    REQUIRE(null.values.size() == 1);
    REQUIRE(null.k_perm == 5);
    REQUIRE(null.k_cmi == 12);

    // The surrogate stream is shared with ci_test.
    const CITestResult full = ci_test(data.x, data.y, data.z, cfg);
    REQUIRE(full.null_values == null.values);
}

TEST_CASE("unconditional tests run on an empty Z block") {
    const SyntheticData data = small_gaussian(14, 150, true);
    CITestConfig cfg;
    cfg.k_cmi = 30;
    cfg.k_perm = 5;
    cfg.num_surrogates = 100;
    cfg.seed = 3;
    const CITestResult result = ci_test(data.x, data.y, VariableBlock(150, 0), cfg);
    // X and Y share a strong Z component, so the unconditional test must reject.
    CHECK(result.p_value < 0.05);
}

TEST_CASE("k_cmi = 0 resolves to the rule of thumb") {
    const SyntheticData data = small_gaussian(4, 100);
    CITestConfig cfg;
    cfg.k_cmi = 0;
    cfg.k_perm = 5;
    cfg.num_surrogates = 8;
    cfg.seed = 11;
    const CITestResult result = ci_test(data.x, data.y, data.z, cfg);
    CHECK(result.config.k_cmi == 20);
}

TEST_CASE("configuration errors propagate") {
    const SyntheticData data = small_gaussian(6, 40);
    CITestConfig cfg;
    cfg.k_cmi = 40;  // needs n >= k_cmi + 1
    cfg.k_perm = 5;
    cfg.num_surrogates = 4;
    CHECK_THROWS_AS(ci_test(data.x, data.y, data.z, cfg), std::invalid_argument);

    cfg.k_cmi = 5;
    VariableBlock bad_y(39, 1);
    CHECK_THROWS_AS(ci_test(data.x, bad_y, data.z, cfg), std::invalid_argument);
}

TEST_CASE("full permutation null sits below the local permutation null under strong X-Z dependence") {
    // Scaled-down version of the bias illustration: with X and Y both
    // driven by Z, destroying the X-Z link shifts surrogate CMI down.
    double mean_local = 0.0;
    double mean_full = 0.0;
    const int reps = 10;
    for (std::uint64_t seed = 0; seed < reps; ++seed) {
        const SyntheticData data = small_gaussian(seed + 500, 300);
        CITestConfig cfg;
        cfg.k_cmi = 60;
        cfg.num_surrogates = 40;
        cfg.seed = seed;

        cfg.k_perm = 5;
        const NullDistribution local = null_distribution(data.x, data.y, data.z, cfg);
        cfg.k_perm = 300;
        const NullDistribution full = null_distribution(data.x, data.y, data.z, cfg);

        mean_local += test::mean_of(local.values);
        mean_full += test::mean_of(full.values);
    }
    CHECK(mean_full / reps < mean_local / reps);
}
