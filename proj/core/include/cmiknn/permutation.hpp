#pragma once

#include <random>
#include <vector>

#include "cmiknn/types.hpp"

namespace cmiknn {

/// Index map pi produced by the nearest-neighbor permutation; entries may
/// repeat when the without-replacement walk runs out of unused neighbors.
struct PermutationMap {
    std::vector<int> pi;      // pi[i] = source row for destination row i
    int k_perm = 0;
    int duplicate_count = 0;  // n - |unique(pi)|
};

/// Neighbor lists in Z-space for the local permutation scheme, built once
/// and shared read-only across surrogates. Each list holds every point
/// within the (non-strict) k_perm-th neighbor distance of i, self
/// included, ascending by id.
class LocalPermutationScheme {
public:
    LocalPermutationScheme(const VariableBlock& z, int k_perm);

    /// One draw of the nearest-neighbor permutation. Deterministic in the
    /// rng state; consumption order is: shuffle of each neighbor list for
    /// i = 0..n-1, then shuffle of the visiting order, then the walk.
    PermutationMap generate(std::mt19937_64& rng) const;

    int sample_count() const { return n_; }
    int k_perm() const { return k_perm_; }
    const std::vector<int>& neighborhood(int i) const { return neighborhoods_[i]; }

private:
    int n_ = 0;
    int k_perm_ = 0;
    std::vector<std::vector<int>> neighborhoods_;
};

/// Nearest-neighbor-restricted permutation over Z (one-shot convenience
/// around LocalPermutationScheme).
PermutationMap local_permutation(const VariableBlock& z, int k_perm, std::mt19937_64& rng);

/// Uniform Fisher-Yates shuffle of {0..n-1}; never repeats an index.
PermutationMap full_permutation(int n, std::mt19937_64& rng);

/// Row i of the output is row pi[i] of the input; all columns move jointly.
VariableBlock apply_permutation(const VariableBlock& x, const PermutationMap& map);

}  // namespace cmiknn
