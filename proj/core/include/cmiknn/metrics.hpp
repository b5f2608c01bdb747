#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace cmiknn {

/// One-sample Kolmogorov-Smirnov distance of the p-values to Uniform(0,1):
/// max over sorted p_(i) of max(i/m - p_(i), p_(i) - (i-1)/m).
double ks_uniform(std::span<const double> pvalues);

/// Area under the power curve alpha -> ECDF(alpha) over [0,1]; equals
/// 1 - mean(p) for the right-continuous ECDF.
double aupc(std::span<const double> pvalues);

/// Fraction of p-values <= alpha.
double rejection_rate(std::span<const double> pvalues, double alpha);

/// Bootstrap standard error of a metric of a p-value sample: standard
/// deviation of the metric over `resamples` with-replacement resamples.
template <typename Metric>
double bootstrap_se(std::span<const double> pvalues, Metric metric, int resamples,
                    std::uint64_t seed);

/// Calibration/power report over a batch of repeated tests. For a pure-H0
/// batch the H1 fields stay empty and vice versa.
struct ExperimentSummary {
    std::vector<double> pvalues_h0;
    std::vector<double> pvalues_h1;
    double ks = 0.0;                  // uniformity of the H0 p-values
    double aupc = 0.0;                // power of the H1 p-values
    std::map<double, double> fpr_at;  // alpha -> H0 rejection rate
    std::map<double, double> tpr_at;  // alpha -> H1 rejection rate
    std::vector<double> runtime_seconds;  // per-test wall clock
};

ExperimentSummary summarize(std::vector<double> pvalues_h0, std::vector<double> pvalues_h1,
                            std::span<const double> alphas, std::vector<double> runtime_seconds);

}  // namespace cmiknn

#include "cmiknn/metrics_impl.hpp"
