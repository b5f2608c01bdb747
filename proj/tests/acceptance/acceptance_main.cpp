// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// any criterion fails. Heavier statistical criteria use fixed seeds, so
// every run is reproducible.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "cmiknn/ci_test.hpp"
#include "cmiknn/digamma.hpp"
#include "cmiknn/errors.hpp"
#include "cmiknn/estimator.hpp"
#include "cmiknn/metrics.hpp"
#include "cmiknn/neighbor_index.hpp"
#include "cmiknn/permutation.hpp"
#include "cmiknn/rank.hpp"
#include "cmiknn/rng.hpp"
#include "cmiknn/synth.hpp"

using namespace cmiknn;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int workers() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::string fmt(const char* format, ...) {
    va_list args;
    va_start(args, format);
    char buffer[512];
    std::vsnprintf(buffer, sizeof(buffer), format, args);
    va_end(args);
    return buffer;
}

VariableBlock random_rank_block(int n, int d, std::mt19937_64& rng) {
    VariableBlock out(n, d);
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int j = 0; j < d; ++j) {
        std::iota(perm.begin(), perm.end(), 1);
        std::shuffle(perm.begin(), perm.end(), rng);
        for (int i = 0; i < n; ++i) {
            out.at(i, j) = static_cast<double>(perm[static_cast<std::size_t>(i)]);
        }
    }
    return out;
}

// --- criterion 1: neighbor queries match the exhaustive oracle ------------

Outcome criterion_oracle_equivalence() {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> n_dist(2, 200);
    std::uniform_int_distribution<int> d_dist(1, 6);
    for (int instance = 0; instance < 200; ++instance) {
        const int n = n_dist(rng);
        const int d = d_dist(rng);
        const VariableBlock pts = random_rank_block(n, d, rng);
        const NeighborIndex tree(pts);
        const LinearScanIndex scan(pts);

        std::uniform_int_distribution<int> id_dist(0, n - 1);
        for (int q = 0; q < 6; ++q) {
            const int i = id_dist(rng);
            const int k = std::uniform_int_distribution<int>(1, n - 1)(rng);
            if (tree.kth_distance_excluding_self(i, k) != scan.kth_distance_excluding_self(i, k)) {
                return {false, fmt("kth_distance_excluding_self mismatch at n=%d d=%d", n, d)};
            }
            const int kp = std::uniform_int_distribution<int>(1, n)(rng);
            if (tree.kth_distance_including_self(i, kp) !=
                scan.kth_distance_including_self(i, kp)) {
                return {false, fmt("kth_distance_including_self mismatch at n=%d d=%d", n, d)};
            }
            std::vector<double> center(pts.row(i), pts.row(i) + d);
            for (auto& c : center) c += std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
            const double radius = std::uniform_real_distribution<double>(0.5, n + 1.0)(rng);
            if (tree.count_strictly_within(center, radius) !=
                scan.count_strictly_within(center, radius)) {
                return {false, fmt("count_strictly_within mismatch at n=%d d=%d", n, d)};
            }
            const double hood = std::uniform_real_distribution<double>(0.0, n / 2.0)(rng);
            if (tree.neighborhood_list(i, hood) != scan.neighborhood_list(i, hood)) {
                return {false, fmt("neighborhood_list mismatch at n=%d d=%d", n, d)};
            }
        }
    }
    return {true, "200 instances, 4 query types, exact"};
}

// --- criterion 2: digamma against the harmonic-sum oracle -----------------

Outcome criterion_digamma() {
    constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
    long double harmonic = 0.0L;
    double worst = 0.0;
    for (int k = 1; k <= 10000; ++k) {
        const double oracle = static_cast<double>(harmonic - static_cast<long double>(kEulerGamma));
        worst = std::max(worst, std::abs(digamma(static_cast<double>(k)) - oracle));
        harmonic += 1.0L / k;
    }
    if (worst > 1e-10) return {false, fmt("max |psi(k) - (H_{k-1}-gamma)| = %.3e", worst)};
    return {true, fmt("max abs error %.3e over k=1..10000", worst)};
}

// --- criterion 3: Gaussian MI recovery -------------------------------------

Outcome criterion_gaussian_mi() {
    const double truth = -0.5 * std::log(1.0 - 0.36);
    double total = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        ModelSpec spec;
        spec.family = ModelFamily::gaussian;
        spec.n = 1000;
        spec.d_z = 0;
        spec.c = 0.6;
        spec.dependent = true;
        spec.seed = seed;
        const SyntheticData data = gen_gaussian(spec);
        auto rng = make_engine(seed, 0);
        const VariableBlock rx = rank_transform(data.x, 1e-6, rng);
        const VariableBlock ry = rank_transform(data.y, 1e-6, rng);
        total += cmi_knn(rx, ry, VariableBlock(1000, 0), 200).value;
    }
    const double mean = total / 50.0;
    const bool pass = std::abs(mean - truth) <= 0.05;
    return {pass, fmt("mean estimate %.4f vs %.4f (tol 0.05)", mean, truth)};
}

// --- criterion 4: hand-counted estimator fixtures --------------------------

Outcome criterion_hand_fixtures() {
    const VariableBlock line = make_column(std::vector<double>{1.0, 2.0, 3.0, 4.0});
    const double zero_case = cmi_knn(line, line, line, 1).value;
    if (std::abs(zero_case) > 1e-12) {
        return {false, fmt("identical-ranks fixture gave %.3e, expected 0", zero_case)};
    }
    const VariableBlock y = make_column(std::vector<double>{1.0, 3.0, 2.0, 4.0});
    const double mi_case = cmi_knn(line, y, VariableBlock(4, 0), 1).value;
    if (std::abs(mi_case - 5.0 / 6.0) > 1e-12) {
        return {false, fmt("4-point MI fixture gave %.15f, expected 5/6", mi_case)};
    }
    return {true, "both fixtures exact to 1e-12"};
}

// --- criteria 5-8: repeated-test helpers -----------------------------------

std::vector<double> pvalues_over_realizations(ModelSpec base, CITestConfig cfg, int realizations,
                                              std::uint64_t master) {
    std::vector<double> pvalues;
    pvalues.reserve(static_cast<std::size_t>(realizations));
    for (int rep = 0; rep < realizations; ++rep) {
        ModelSpec spec = base;
        spec.seed = derive_seed(master, static_cast<std::uint64_t>(2 * rep));
        const SyntheticData data = generate(spec);
        cfg.seed = derive_seed(master, static_cast<std::uint64_t>(2 * rep + 1));
        pvalues.push_back(ci_test(data.x, data.y, data.z, cfg).p_value);
    }
    return pvalues;
}

Outcome criterion_h0_calibration() {
    ModelSpec spec;
    spec.family = ModelFamily::postnonlinear;
    spec.n = 500;
    spec.d_z = 1;
    spec.dependent = false;

    CITestConfig cfg;
    cfg.k_cmi = 100;
    cfg.k_perm = 5;
    cfg.num_surrogates = 200;
    cfg.workers = workers();

    const std::vector<double> pvalues = pvalues_over_realizations(spec, cfg, 200, 50001);
    const double fpr = rejection_rate(pvalues, 0.05);
    const double ks = ks_uniform(pvalues);
    const bool pass = fpr >= 0.02 && fpr <= 0.09 && ks < 0.10;
    return {pass, fmt("FPR@0.05 = %.3f (need [0.02,0.09]), KS = %.3f (need < 0.10)", fpr, ks)};
}

Outcome criterion_full_permutation_bias() {
    ModelSpec spec;
    spec.family = ModelFamily::gaussian;
    spec.n = 1000;
    spec.d_z = 1;
    spec.dependent = false;  // zero partial correlation, strong X-Z and Y-Z links

    CITestConfig cfg;
    cfg.k_cmi = 200;
    cfg.num_surrogates = 100;
    cfg.workers = workers();

    double local_null_mean = 0.0, full_null_mean = 0.0;
    std::vector<double> local_pvalues, full_pvalues;
    const int reps = 100;
    for (int rep = 0; rep < reps; ++rep) {
        spec.seed = derive_seed(60001, static_cast<std::uint64_t>(2 * rep));
        const SyntheticData data = generate(spec);
        cfg.seed = derive_seed(60001, static_cast<std::uint64_t>(2 * rep + 1));

        cfg.k_perm = 5;
        const CITestResult local = ci_test(data.x, data.y, data.z, cfg);
        cfg.k_perm = spec.n;
        const CITestResult full = ci_test(data.x, data.y, data.z, cfg);

        for (double v : local.null_values) local_null_mean += v;
        for (double v : full.null_values) full_null_mean += v;
        local_pvalues.push_back(local.p_value);
        full_pvalues.push_back(full.p_value);
    }
    local_null_mean /= static_cast<double>(reps * cfg.num_surrogates);
    full_null_mean /= static_cast<double>(reps * cfg.num_surrogates);

    const double fpr_local = rejection_rate(local_pvalues, 0.05);
    const double fpr_full = rejection_rate(full_pvalues, 0.05);
    const bool pass = full_null_mean < local_null_mean && fpr_full > fpr_local;
    return {pass, fmt("null means %.4f (k_perm=n) vs %.4f (k_perm=5); FPR %.3f vs %.3f",
                      full_null_mean, local_null_mean, fpr_full, fpr_local)};
}

Outcome criterion_h1_power() {
    ModelSpec spec;
    spec.family = ModelFamily::postnonlinear;
    spec.n = 1000;
    spec.d_z = 1;
    spec.c = 0.5;
    spec.dependent = true;

    CITestConfig cfg;
    cfg.k_cmi = 200;
    cfg.k_perm = 5;
    cfg.num_surrogates = 200;
    cfg.workers = workers();

    const std::vector<double> pvalues = pvalues_over_realizations(spec, cfg, 100, 70001);
    const double tpr = rejection_rate(pvalues, 0.05);
    return {tpr >= 0.90, fmt("TPR@0.05 = %.3f (need >= 0.90)", tpr)};
}

Outcome criterion_multiplicative_calibration() {
    ModelSpec spec;
    spec.family = ModelFamily::postnonlinear_mult;
    spec.n = 1000;
    spec.d_z = 2;
    spec.dependent = false;

    CITestConfig cfg;
    cfg.k_cmi = 200;
    cfg.k_perm = 5;
    cfg.num_surrogates = 200;
    cfg.workers = workers();

    const std::vector<double> pvalues = pvalues_over_realizations(spec, cfg, 100, 80001);
    const double fpr = rejection_rate(pvalues, 0.05);
    return {fpr <= 0.10, fmt("FPR@0.05 = %.3f (need <= 0.10)", fpr)};
}

// --- criterion 9: permutation invariants ------------------------------------

Outcome criterion_permutation_invariants() {
    std::mt19937_64 rng(90001);
    for (int instance = 0; instance < 1000; ++instance) {
        const int n = std::uniform_int_distribution<int>(4, 40)(rng);
        const int dz = std::uniform_int_distribution<int>(1, 3)(rng);
        const int k_perm = std::uniform_int_distribution<int>(1, n)(rng);
        const VariableBlock z = random_rank_block(n, dz, rng);
        const NeighborIndex index(z);

        std::mt19937_64 perm_rng(static_cast<std::uint64_t>(instance));
        const PermutationMap map = local_permutation(z, k_perm, perm_rng);
        for (int i = 0; i < n; ++i) {
            const double radius = index.kth_distance_including_self(i, k_perm);
            double dist = 0.0;
            for (int c = 0; c < dz; ++c) {
                dist = std::max(dist,
                                std::abs(z.at(map.pi[static_cast<std::size_t>(i)], c) - z.at(i, c)));
            }
            if (dist > radius) {
                return {false, fmt("containment violated at instance %d (i=%d)", instance, i)};
            }
        }

        const PermutationMap identity = local_permutation(z, 1, perm_rng);
        for (int i = 0; i < n; ++i) {
            if (identity.pi[static_cast<std::size_t>(i)] != i) {
                return {false, fmt("k_perm=1 not identity at instance %d", instance)};
            }
        }

        const PermutationMap full = local_permutation(z, n, perm_rng);
        if (full.duplicate_count != 0) {
            return {false, fmt("k_perm=n produced duplicates at instance %d", instance)};
        }
    }
    return {true, "1000 instances: containment, identity, no-duplicate checks"};
}

// --- criterion 10: worker-count determinism ---------------------------------

Outcome criterion_determinism() {
    ModelSpec spec;
    spec.family = ModelFamily::postnonlinear;
    spec.n = 200;
    spec.d_z = 2;
    spec.seed = 77;
    const SyntheticData data = generate(spec);

    CITestConfig cfg;
    cfg.k_cmi = 40;
    cfg.k_perm = 5;
    cfg.num_surrogates = 64;
    cfg.seed = 13;

    cfg.workers = 1;
    const CITestResult reference = ci_test(data.x, data.y, data.z, cfg);
    for (int w : {4, 8}) {
        cfg.workers = w;
        const CITestResult run = ci_test(data.x, data.y, data.z, cfg);
        const bool same_stat = std::memcmp(&run.statistic, &reference.statistic,
                                           sizeof(double)) == 0;
        const bool same_null =
            run.null_values.size() == reference.null_values.size() &&
            std::memcmp(run.null_values.data(), reference.null_values.data(),
                        reference.null_values.size() * sizeof(double)) == 0;
        const bool same_p = std::memcmp(&run.p_value, &reference.p_value, sizeof(double)) == 0;
        if (!(same_stat && same_null && same_p)) {
            return {false, fmt("results differ between workers=1 and workers=%d", w)};
        }
    }
    return {true, "byte-identical across workers 1, 4, 8"};
}

struct Criterion {
    const char* name;
    double time_limit_seconds;  // 0 = unbounded
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"neighbor-index oracle equivalence", 10.0, criterion_oracle_equivalence},
        {"digamma harmonic-sum accuracy", 1.0, criterion_digamma},
        {"gaussian MI recovery (rho=0.6)", 30.0, criterion_gaussian_mi},
        {"hand-counted estimator fixtures", 0.0, criterion_hand_fixtures},
        {"H0 calibration, post-nonlinear", 900.0, criterion_h0_calibration},
        {"full-permutation negative bias", 0.0, criterion_full_permutation_bias},
        {"H1 power, post-nonlinear c=0.5", 0.0, criterion_h1_power},
        {"multiplicative-model calibration", 0.0, criterion_multiplicative_calibration},
        {"local-permutation invariants", 0.0, criterion_permutation_invariants},
        {"worker-count determinism", 0.0, criterion_determinism},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& criterion = criteria[i];
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criterion.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (criterion.time_limit_seconds > 0.0 && elapsed > criterion.time_limit_seconds &&
            outcome.pass) {
            outcome = {false, outcome.detail + fmt("; exceeded %.0f s budget",
                                                   criterion.time_limit_seconds)};
        }
        std::printf("%s  %2zu  %-36s  %s  (%.1f s)\n", outcome.pass ? "PASS" : "FAIL", i + 1,
                    criterion.name, outcome.detail.c_str(), elapsed);
        std::fflush(stdout);
        if (!outcome.pass) ++failures;
    }
    if (failures > 0) {
        std::printf("%d of %zu criteria failed\n", failures, criteria.size());
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
