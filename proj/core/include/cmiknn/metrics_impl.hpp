#pragma once

#include <cmath>
#include <random>
#include <stdexcept>

namespace cmiknn {

template <typename Metric>
double bootstrap_se(std::span<const double> pvalues, Metric metric, int resamples,
                    std::uint64_t seed) {
    if (pvalues.empty()) {
        throw std::invalid_argument("bootstrap_se: empty input");
    }
    if (resamples < 2) {
        throw std::invalid_argument("bootstrap_se: need at least 2 resamples");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, pvalues.size() - 1);
    std::vector<double> resample(pvalues.size());
    std::vector<double> stats(static_cast<std::size_t>(resamples));
    for (int b = 0; b < resamples; ++b) {
        for (auto& v : resample) v = pvalues[pick(rng)];
        stats[static_cast<std::size_t>(b)] = metric(std::span<const double>(resample));
    }
    double mean = 0.0;
    for (double s : stats) mean += s;
    mean /= resamples;
    double ss = 0.0;
    for (double s : stats) ss += (s - mean) * (s - mean);
    return std::sqrt(ss / (resamples - 1));
}

}  // namespace cmiknn
