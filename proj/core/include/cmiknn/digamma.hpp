#pragma once

#include <vector>

namespace cmiknn {

/// psi(x) = d/dx ln Gamma(x) for x > 0. Absolute error <= 1e-10 for x >= 1.
/// Throws std::domain_error for x <= 0.
double digamma(double x);

/// psi at integer arguments 1..nmax via a cumulative harmonic table,
/// psi(k) = H_{k-1} - gamma. The estimators only ever evaluate psi at
/// integers bounded by the sample count, so one O(n) table turns every
/// lookup into an array read.
class DigammaTable {
public:
    explicit DigammaTable(int nmax);

    double operator()(int k) const { return table_[k]; }

    int max_argument() const { return static_cast<int>(table_.size()) - 1; }

private:
    std::vector<double> table_;  // table_[k] = psi(k), index 0 unused
};

}  // namespace cmiknn
