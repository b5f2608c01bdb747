#include "cmiknn/digamma.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cmiknn {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Bernoulli coefficients B_{2k}/(2k) of the asymptotic expansion
// psi(x) ~ ln x - 1/(2x) - sum_k B_{2k}/(2k x^{2k}).
constexpr double kB2 = 1.0 / 12.0;
constexpr double kB4 = 1.0 / 120.0;
constexpr double kB6 = 1.0 / 252.0;
constexpr double kB8 = 1.0 / 240.0;
constexpr double kB10 = 1.0 / 132.0;
constexpr double kB12 = 691.0 / 32760.0;

}  // namespace

double digamma(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("digamma: argument must be positive, got " + std::to_string(x));
    }
    // Upward recurrence psi(x) = psi(x+1) - 1/x until the asymptotic
    // series is accurate (truncation below 2e-14 for x >= 8).
    double shift = 0.0;
    while (x < 8.0) {
        shift -= 1.0 / x;
        x += 1.0;
    }
    const double z = 1.0 / (x * x);
    const double series = z * (kB2 - z * (kB4 - z * (kB6 - z * (kB8 - z * (kB10 - z * kB12)))));
    return shift + std::log(x) - 0.5 / x - series;
}

DigammaTable::DigammaTable(int nmax) {
    if (nmax < 1) {
        throw std::invalid_argument("DigammaTable: nmax must be >= 1");
    }
    table_.resize(static_cast<std::size_t>(nmax) + 1);
    table_[0] = 0.0;  // unused
    long double acc = -static_cast<long double>(kEulerGamma);
    table_[1] = static_cast<double>(acc);
    for (int k = 1; k < nmax; ++k) {
        acc += 1.0L / static_cast<long double>(k);
        table_[static_cast<std::size_t>(k) + 1] = static_cast<double>(acc);
    }
}

}  // namespace cmiknn
