#include "cmiknn/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "cmiknn/neighbor_index.hpp"

namespace cmiknn {

namespace {

int count_duplicates(const std::vector<int>& pi) {
    std::vector<bool> seen(pi.size(), false);
    int unique = 0;
    for (int j : pi) {
        if (!seen[j]) {
            seen[j] = true;
            ++unique;
        }
    }
    return static_cast<int>(pi.size()) - unique;
}

}  // namespace

LocalPermutationScheme::LocalPermutationScheme(const VariableBlock& z, int k_perm)
    : n_(z.rows()), k_perm_(k_perm) {
    if (z.cols() < 1) {
        throw std::invalid_argument("local permutation: Z must have at least one dimension");
    }
    if (k_perm < 1 || k_perm > n_) {
        throw std::invalid_argument("local permutation: need 1 <= k_perm <= n");
    }
    const NeighborIndex index(z);
    neighborhoods_.resize(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        const double radius = index.kth_distance_including_self(i, k_perm);
        neighborhoods_[static_cast<std::size_t>(i)] = index.neighborhood_list(i, radius);
    }
}

PermutationMap LocalPermutationScheme::generate(std::mt19937_64& rng) const {
    auto lists = neighborhoods_;
    for (auto& list : lists) {
        std::shuffle(list.begin(), list.end(), rng);
    }

    std::vector<int> order(static_cast<std::size_t>(n_));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);

    PermutationMap map;
    map.k_perm = k_perm_;
    map.pi.resize(static_cast<std::size_t>(n_));
    std::vector<bool> used(static_cast<std::size_t>(n_), false);

    // Walk each shuffled list for an unused id, giving up after k_perm-1
    // steps and drawing with replacement; lists can be longer than k_perm
    // under distance ties but the scan budget stays k_perm.
    for (int i : order) {
        const auto& list = lists[static_cast<std::size_t>(i)];
        int j = list[0];
        int m = 0;
        while (used[static_cast<std::size_t>(j)] && m < k_perm_ - 1) {
            ++m;
            j = list[static_cast<std::size_t>(m)];
        }
        map.pi[static_cast<std::size_t>(i)] = j;
        used[static_cast<std::size_t>(j)] = true;
    }
    map.duplicate_count = count_duplicates(map.pi);
    return map;
}

PermutationMap local_permutation(const VariableBlock& z, int k_perm, std::mt19937_64& rng) {
    return LocalPermutationScheme(z, k_perm).generate(rng);
}

PermutationMap full_permutation(int n, std::mt19937_64& rng) {
    if (n < 1) {
        throw std::invalid_argument("full_permutation: need n >= 1");
    }
    PermutationMap map;
    map.k_perm = n;
    map.pi.resize(static_cast<std::size_t>(n));
    std::iota(map.pi.begin(), map.pi.end(), 0);
    std::shuffle(map.pi.begin(), map.pi.end(), rng);
    map.duplicate_count = 0;
    return map;
}

VariableBlock apply_permutation(const VariableBlock& x, const PermutationMap& map) {
    const int n = x.rows();
    if (static_cast<int>(map.pi.size()) != n) {
        throw std::invalid_argument("apply_permutation: length mismatch");
    }
    VariableBlock out(n, x.cols());
    for (int i = 0; i < n; ++i) {
        const double* src = x.row(map.pi[static_cast<std::size_t>(i)]);
        std::copy(src, src + x.cols(), out.row(i));
    }
    return out;
}

}  // namespace cmiknn
