#pragma once

#include <vector>

#include "cmiknn/types.hpp"

namespace cmiknn {

/// Balanced KD-tree over n points under the maximum (Chebyshev) metric.
/// Read-only after construction; concurrent queries are safe. Query
/// results are contractually identical to an exhaustive linear scan.
class NeighborIndex {
public:
    static constexpr int kDefaultLeafSize = 16;

    explicit NeighborIndex(const VariableBlock& points, int leaf_size = kDefaultLeafSize);

    int size() const { return n_; }
    int dim() const { return d_; }

    /// Max-norm distance from point i to its k-th nearest other point
    /// (the reference point is not a neighbor of itself). 1 <= k <= n-1.
    double kth_distance_excluding_self(int i, int k) const;

    /// Distance to the k_perm-th neighbor when the point itself counts as
    /// the first neighbor at distance zero, so k_perm = 1 gives 0.
    /// 1 <= k_perm <= n.
    double kth_distance_including_self(int i, int k_perm) const;

    /// Number of indexed points with distance strictly below `radius`
    /// from `center` (a point of the index at `center` counts itself).
    int count_strictly_within(const double* center, double radius) const;
    int count_strictly_within(const std::vector<double>& center, double radius) const;

    /// Ids of all points within non-strict distance `radius` of point i,
    /// ascending; always contains i. May exceed any neighbor budget when
    /// distances tie.
    std::vector<int> neighborhood_list(int i, double radius) const;

private:
    struct Node {
        int begin = 0;
        int end = 0;
        int left = -1;   // -1 marks a leaf
        int right = -1;
    };

    int build_node(int begin, int end);
    double box_min_dist(int node, const double* q) const;
    double box_max_dist(int node, const double* q) const;
    void knn_search(int node, const double* q, int skip_id, int k, std::vector<double>& heap) const;
    int count_search(int node, const double* q, double radius) const;
    void range_search(int node, const double* q, double radius, std::vector<int>& out) const;

    const double* point(int pos) const { return pts_.data() + static_cast<std::size_t>(pos) * d_; }
    const double* point_by_id(int id) const { return point(pos_of_id_[id]); }

    int n_ = 0;
    int d_ = 0;
    int leaf_size_ = kDefaultLeafSize;
    std::vector<double> pts_;     // row-major, leaf-contiguous order
    std::vector<int> ids_;        // ids_[pos] = original point id
    std::vector<int> pos_of_id_;  // inverse of ids_
    std::vector<Node> nodes_;
    std::vector<double> box_lo_;  // nodes x d bounding boxes
    std::vector<double> box_hi_;
};

/// Exhaustive O(n^2) reference with the same query contracts as
/// NeighborIndex; the oracle the tree is tested against.
class LinearScanIndex {
public:
    explicit LinearScanIndex(const VariableBlock& points);

    int size() const { return n_; }
    int dim() const { return d_; }

    double kth_distance_excluding_self(int i, int k) const;
    double kth_distance_including_self(int i, int k_perm) const;
    int count_strictly_within(const double* center, double radius) const;
    int count_strictly_within(const std::vector<double>& center, double radius) const;
    std::vector<int> neighborhood_list(int i, double radius) const;

private:
    int n_ = 0;
    int d_ = 0;
    std::vector<double> pts_;
};

}  // namespace cmiknn
