#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "cmiknn/types.hpp"

namespace cmiknn::test {

/// n x d block whose columns are independent random permutations of
/// {1..n}: the shape every post-rank-transform input has.
inline VariableBlock random_rank_block(int n, int d, std::mt19937_64& rng) {
    VariableBlock out(n, d);
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int j = 0; j < d; ++j) {
        std::iota(perm.begin(), perm.end(), 1);
        std::shuffle(perm.begin(), perm.end(), rng);
        for (int i = 0; i < n; ++i) out.at(i, j) = static_cast<double>(perm[static_cast<std::size_t>(i)]);
    }
    return out;
}

/// n x d block of integer coordinates drawn uniformly from [0, hi]; may
/// contain duplicate points and exact distance ties.
inline VariableBlock random_grid_block(int n, int d, int hi, std::mt19937_64& rng) {
    VariableBlock out(n, d);
    std::uniform_int_distribution<int> coord(0, hi);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) out.at(i, j) = static_cast<double>(coord(rng));
    }
    return out;
}

inline VariableBlock gaussian_block(int n, int d, std::mt19937_64& rng) {
    VariableBlock out(n, d);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) out.at(i, j) = gauss(rng);
    }
    return out;
}

inline double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace cmiknn::test
