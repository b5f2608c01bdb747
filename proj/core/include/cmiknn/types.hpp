#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cmiknn {

/// Dense row-major n x d sample matrix for one variable group (X, Y or Z).
/// d == 0 is a valid state for the conditioning block Z and denotes the
/// unconditional case; such a block still carries a row count.
class VariableBlock {
public:
    VariableBlock() = default;

    VariableBlock(int n, int d) : n_(n), d_(d), data_(static_cast<std::size_t>(n) * d, 0.0) {}

    VariableBlock(int n, int d, std::vector<double> data) : n_(n), d_(d), data_(std::move(data)) {}

    int rows() const { return n_; }
    int cols() const { return d_; }

    double* row(int i) { return data_.data() + static_cast<std::size_t>(i) * d_; }
    const double* row(int i) const { return data_.data() + static_cast<std::size_t>(i) * d_; }

    double& at(int i, int j) { return data_[static_cast<std::size_t>(i) * d_ + j]; }
    double at(int i, int j) const { return data_[static_cast<std::size_t>(i) * d_ + j]; }

    std::span<const double> flat() const { return data_; }
    std::span<double> flat() { return data_; }

    bool all_finite() const;

    /// Column extracted by value (strided copy).
    std::vector<double> column(int j) const;

private:
    int n_ = 0;
    int d_ = 0;
    std::vector<double> data_;
};

/// Columns of `a` followed by columns of `b`; both must share the row count.
VariableBlock hstack(const VariableBlock& a, const VariableBlock& b);

/// Single-column block from a flat vector of samples.
VariableBlock make_column(std::span<const double> values);

/// Parameters of one conditional-independence test run.
struct CITestConfig {
    int k_cmi = 0;             // estimator neighbor count; 0 = rule-of-thumb at run time
    int k_perm = 5;            // permutation neighborhood size
    int num_surrogates = 1000; // B
    std::uint64_t seed = 0;
    double noise_amp = 1e-6;   // tie-break noise, relative to per-column std
    int workers = 1;
};

/// Throws std::invalid_argument unless 1 <= k_cmi <= n-1, 1 <= k_perm <= n,
/// B >= 1, workers >= 1 and noise_amp >= 0.
void validate_config(const CITestConfig& cfg, int n);

struct CITestResult {
    double statistic = 0.0;           // observed CMI, nats
    std::vector<double> null_values;  // B surrogate CMI values, nats
    double p_value = 0.0;
    CITestConfig config;
};

}  // namespace cmiknn
