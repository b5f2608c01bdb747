#include "cmiknn/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace cmiknn {

namespace {

void check_pvalues(std::span<const double> pvalues) {
    if (pvalues.empty()) {
        throw std::invalid_argument("metrics: empty p-value array");
    }
    for (double p : pvalues) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("metrics: p-values must lie in [0,1]");
        }
    }
}

}  // namespace

double ks_uniform(std::span<const double> pvalues) {
    check_pvalues(pvalues);
    std::vector<double> sorted(pvalues.begin(), pvalues.end());
    std::sort(sorted.begin(), sorted.end());
    const double m = static_cast<double>(sorted.size());
    double dist = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double above = (static_cast<double>(i) + 1.0) / m - sorted[i];
        const double below = sorted[i] - static_cast<double>(i) / m;
        dist = std::max(dist, std::max(above, below));
    }
    return dist;
}

double aupc(std::span<const double> pvalues) {
    check_pvalues(pvalues);
    double mean = 0.0;
    for (double p : pvalues) mean += p;
    return 1.0 - mean / static_cast<double>(pvalues.size());
}

double rejection_rate(std::span<const double> pvalues, double alpha) {
    check_pvalues(pvalues);
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("rejection_rate: alpha must lie in (0,1)");
    }
    std::size_t count = 0;
    for (double p : pvalues) {
        if (p <= alpha) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(pvalues.size());
}

ExperimentSummary summarize(std::vector<double> pvalues_h0, std::vector<double> pvalues_h1,
                            std::span<const double> alphas, std::vector<double> runtime_seconds) {
    ExperimentSummary s;
    s.pvalues_h0 = std::move(pvalues_h0);
    s.pvalues_h1 = std::move(pvalues_h1);
    s.runtime_seconds = std::move(runtime_seconds);
    if (!s.pvalues_h0.empty()) {
        s.ks = ks_uniform(s.pvalues_h0);
        for (double a : alphas) s.fpr_at[a] = rejection_rate(s.pvalues_h0, a);
    }
    if (!s.pvalues_h1.empty()) {
        s.aupc = aupc(s.pvalues_h1);
        for (double a : alphas) s.tpr_at[a] = rejection_rate(s.pvalues_h1, a);
    }
    return s;
}

}  // namespace cmiknn
