#pragma once

#include <numeric>
#include <random>
#include <vector>

#include "cmiknn/types.hpp"

namespace cmiknn::bench {

inline VariableBlock rank_columns(int n, int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
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

}  // namespace cmiknn::bench
