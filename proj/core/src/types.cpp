#include "cmiknn/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cmiknn {

bool VariableBlock::all_finite() const {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

std::vector<double> VariableBlock::column(int j) const {
    std::vector<double> out(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) out[static_cast<std::size_t>(i)] = at(i, j);
    return out;
}

VariableBlock hstack(const VariableBlock& a, const VariableBlock& b) {
    if (a.rows() != b.rows()) {
        throw std::invalid_argument("hstack: row counts differ (" + std::to_string(a.rows()) +
                                    " vs " + std::to_string(b.rows()) + ")");
    }
    const int n = a.rows();
    VariableBlock out(n, a.cols() + b.cols());
    for (int i = 0; i < n; ++i) {
        double* dst = out.row(i);
        const double* ra = a.row(i);
        const double* rb = b.row(i);
        for (int j = 0; j < a.cols(); ++j) dst[j] = ra[j];
        for (int j = 0; j < b.cols(); ++j) dst[a.cols() + j] = rb[j];
    }
    return out;
}

VariableBlock make_column(std::span<const double> values) {
    VariableBlock out(static_cast<int>(values.size()), 1);
    for (std::size_t i = 0; i < values.size(); ++i) out.at(static_cast<int>(i), 0) = values[i];
    return out;
}

void validate_config(const CITestConfig& cfg, int n) {
    if (cfg.k_cmi < 1 || cfg.k_cmi > n - 1) {
        throw std::invalid_argument("config: k_cmi must satisfy 1 <= k_cmi <= n-1 (k_cmi=" +
                                    std::to_string(cfg.k_cmi) + ", n=" + std::to_string(n) + ")");
    }
    if (cfg.k_perm < 1 || cfg.k_perm > n) {
        throw std::invalid_argument("config: k_perm must satisfy 1 <= k_perm <= n");
    }
    if (cfg.num_surrogates < 1) {
        throw std::invalid_argument("config: number of surrogates must be >= 1");
    }
    if (cfg.workers < 1) {
        throw std::invalid_argument("config: workers must be >= 1");
    }
    if (cfg.noise_amp < 0.0) {
        throw std::invalid_argument("config: noise_amp must be nonnegative");
    }
}

}  // namespace cmiknn
