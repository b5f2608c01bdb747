#include "cmiknn/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "cmiknn/digamma.hpp"
#include "cmiknn/errors.hpp"
#include "cmiknn/neighbor_index.hpp"

namespace cmiknn {

namespace {

constexpr double kLog2 = 0.6931471805599453;

[[noreturn]] void throw_degenerate(int i) {
    throw DegenerateGeometryError(
        "duplicate points: the k-th neighbor distance of point " + std::to_string(i) +
        " is zero; rank-transform the data with noise_amp > 0 before estimating");
}

}  // namespace

double entropy_knn(const VariableBlock& block, int k) {
    const int n = block.rows();
    const int d = block.cols();
    if (n < 2 || d < 1) {
        throw std::invalid_argument("entropy_knn: need n >= 2 and D >= 1");
    }
    if (k < 1 || k > n - 1) {
        throw std::invalid_argument("entropy_knn: need 1 <= k <= n-1");
    }

    const NeighborIndex index(block);
    const DigammaTable psi(n);

    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double eps = index.kth_distance_excluding_self(i, k);
        if (!(eps > 0.0)) throw_degenerate(i);
        const int count = index.count_strictly_within(block.row(i), eps);
        acc += -psi(count) + d * std::log(eps);
    }
    return psi(n) + acc / n + d * kLog2;
}

CmiEstimate cmi_knn(const VariableBlock& x, const VariableBlock& y, const VariableBlock& z,
                    int k_cmi, bool keep_counts) {
    const int n = x.rows();
    if (y.rows() != n || (z.cols() > 0 && z.rows() != n)) {
        throw std::invalid_argument("cmi_knn: blocks must share the sample count");
    }
    if (x.cols() < 1 || y.cols() < 1) {
        throw std::invalid_argument("cmi_knn: X and Y must have at least one column");
    }
    if (n < 2 || k_cmi < 1 || k_cmi > n - 1) {
        throw std::invalid_argument("cmi_knn: need 1 <= k_cmi <= n-1");
    }

    const bool conditional = z.cols() > 0;
    const VariableBlock xy = hstack(x, y);
    const VariableBlock joint = conditional ? hstack(xy, z) : xy;
    const VariableBlock xz = conditional ? hstack(x, z) : x;
    const VariableBlock yz = conditional ? hstack(y, z) : y;

    const NeighborIndex joint_index(joint);
    const NeighborIndex xz_index(xz);
    const NeighborIndex yz_index(yz);
    std::optional<NeighborIndex> z_index;
    if (conditional) z_index.emplace(z);

    const DigammaTable psi(n);

    CmiEstimate est;
    est.k_cmi = k_cmi;
    if (keep_counts) est.per_point_counts.resize(static_cast<std::size_t>(n));

    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double eps = joint_index.kth_distance_excluding_self(i, k_cmi);
        if (!(eps > 0.0)) throw_degenerate(i);
        const int k_xz = xz_index.count_strictly_within(xz.row(i), eps);
        const int k_yz = yz_index.count_strictly_within(yz.row(i), eps);
        const int k_z = conditional ? z_index->count_strictly_within(z.row(i), eps) : n;
        // psi(k_xz) + psi(k_yz) first: addition commutes bit-exactly, so
        // swapping X and Y leaves the result bit-identical.
        acc += psi(k_z) - (psi(k_xz) + psi(k_yz));
        if (keep_counts) est.per_point_counts[static_cast<std::size_t>(i)] = {k_xz, k_yz, k_z};
    }
    est.value = psi(k_cmi) + acc / n;
    return est;
}

int rule_of_thumb_k(int n) {
    if (n < 2) {
        throw std::invalid_argument("rule_of_thumb_k: need n >= 2");
    }
    const long k = std::lround(0.2 * n);
    return static_cast<int>(std::clamp(k, 1L, static_cast<long>(n - 1)));
}

}  // namespace cmiknn
