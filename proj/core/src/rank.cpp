#include "cmiknn/rank.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cmiknn/errors.hpp"

namespace cmiknn {

namespace {

double population_std(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / n);
}

}  // namespace

VariableBlock rank_transform(const VariableBlock& block, double noise_amp, std::mt19937_64& rng) {
    const int n = block.rows();
    const int d = block.cols();
    if (n < 1) {
        throw std::invalid_argument("rank_transform: block must have at least one row");
    }
    if (noise_amp < 0.0) {
        throw std::invalid_argument("rank_transform: noise_amp must be nonnegative");
    }

    VariableBlock out(n, d);
    std::vector<double> col(n);
    std::vector<int> order(n);
    std::normal_distribution<double> gauss(0.0, 1.0);

    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < n; ++i) col[i] = block.at(i, j);

        if (noise_amp > 0.0) {
            const double sd = population_std(col);
            const double scale = sd > 0.0 ? noise_amp * sd : noise_amp;
            for (int i = 0; i < n; ++i) col[i] += scale * gauss(rng);
        }

        // Largest value gets rank 1; index tiebreak keeps the sort
        // deterministic, exact ties are rejected below.
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (col[a] != col[b]) return col[a] > col[b];
            return a < b;
        });
        for (int r = 1; r < n; ++r) {
            if (col[order[r - 1]] == col[order[r]]) {
                throw TieError("rank_transform: tied values in column " + std::to_string(j) +
                               "; set noise_amp > 0 to break ties");
            }
        }
        for (int r = 0; r < n; ++r) {
            out.at(order[r], j) = static_cast<double>(r + 1);
        }
    }
    return out;
}

}  // namespace cmiknn
