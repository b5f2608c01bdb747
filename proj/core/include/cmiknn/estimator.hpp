#pragma once

#include <array>
#include <vector>

#include "cmiknn/types.hpp"

namespace cmiknn {

struct CmiEstimate {
    double value = 0.0;  // nats; may be negative
    int k_cmi = 0;
    // Per-point (k_xz, k_yz, k_z) when requested; empty otherwise.
    std::vector<std::array<int, 3>> per_point_counts;
};

/// Kozachenko-Leonenko differential entropy of a D-dimensional sample in
/// nats, max metric: psi(n) + mean_i[-psi(k_i) + D log eps_i] + D log 2,
/// with eps_i the k-th neighbor distance excluding self and k_i the
/// strict count within eps_i including self. Accepts raw or
/// rank-transformed data; points must be pairwise distinct.
double entropy_knn(const VariableBlock& block, int k);

/// Nearest-neighbor CMI estimate of I(X;Y|Z) in nats:
/// psi(k) + mean_i[psi(k_z,i) - psi(k_xz,i) - psi(k_yz,i)], where eps_i
/// is the k-th neighbor distance in the joint space (excluding self) and
/// the subspace counts are strict and include the reference point. An
/// empty Z (0 columns) reduces to the mutual-information estimator with
/// k_z,i = n. Inputs are expected rank-transformed and tie-free in the
/// joint space; duplicate joint points raise DegenerateGeometryError.
CmiEstimate cmi_knn(const VariableBlock& x, const VariableBlock& y, const VariableBlock& z,
                    int k_cmi, bool keep_counts = false);

/// round(0.2 n) clamped to [1, n-1].
int rule_of_thumb_k(int n);

}  // namespace cmiknn
