#include "cmiknn/neighbor_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cmiknn {

namespace {

inline double max_norm(const double* a, const double* b, int d) {
    double dist = 0.0;
    for (int j = 0; j < d; ++j) {
        const double v = std::abs(a[j] - b[j]);
        if (v > dist) dist = v;
    }
    return dist;
}

void check_point_set(const VariableBlock& points) {
    if (points.rows() < 1) {
        throw std::invalid_argument("neighbor index: empty point set");
    }
    if (points.cols() < 1) {
        throw std::invalid_argument("neighbor index: dimension must be >= 1");
    }
    if (!points.all_finite()) {
        throw std::invalid_argument("neighbor index: points must be finite");
    }
}

void check_query_point(int i, int n) {
    if (i < 0 || i >= n) {
        throw std::invalid_argument("neighbor index: point id out of range");
    }
}

void check_radius_positive(double radius) {
    if (!(radius > 0.0)) {
        throw std::invalid_argument("neighbor index: radius must be positive");
    }
}

}  // namespace

NeighborIndex::NeighborIndex(const VariableBlock& points, int leaf_size)
    : n_(points.rows()), d_(points.cols()), leaf_size_(leaf_size) {
    check_point_set(points);
    if (leaf_size_ < 1) {
        throw std::invalid_argument("neighbor index: leaf_size must be >= 1");
    }

    ids_.resize(n_);
    std::iota(ids_.begin(), ids_.end(), 0);
    pts_.assign(points.flat().begin(), points.flat().end());

    nodes_.reserve(static_cast<std::size_t>(2 * n_ / leaf_size_ + 2));
    build_node(0, n_);

    // Reorder the point rows into leaf-contiguous layout.
    std::vector<double> ordered(pts_.size());
    for (int pos = 0; pos < n_; ++pos) {
        const double* src = points.row(ids_[pos]);
        std::copy(src, src + d_, ordered.begin() + static_cast<std::size_t>(pos) * d_);
    }
    pts_ = std::move(ordered);

    pos_of_id_.resize(n_);
    for (int pos = 0; pos < n_; ++pos) pos_of_id_[ids_[pos]] = pos;
}

int NeighborIndex::build_node(int begin, int end) {
    const int node_id = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{begin, end, -1, -1});
    box_lo_.resize(box_lo_.size() + d_);
    box_hi_.resize(box_hi_.size() + d_);

    double* lo = box_lo_.data() + static_cast<std::size_t>(node_id) * d_;
    double* hi = box_hi_.data() + static_cast<std::size_t>(node_id) * d_;
    for (int j = 0; j < d_; ++j) {
        lo[j] = std::numeric_limits<double>::infinity();
        hi[j] = -std::numeric_limits<double>::infinity();
    }
    for (int pos = begin; pos < end; ++pos) {
        const double* p = pts_.data() + static_cast<std::size_t>(ids_[pos]) * d_;
        for (int j = 0; j < d_; ++j) {
            lo[j] = std::min(lo[j], p[j]);
            hi[j] = std::max(hi[j], p[j]);
        }
    }

    if (end - begin <= leaf_size_) {
        return node_id;
    }

    // Median split on the widest box dimension; the (value, id) tiebreak
    // makes nth_element deterministic.
    int split_dim = 0;
    double widest = -1.0;
    for (int j = 0; j < d_; ++j) {
        const double extent = hi[j] - lo[j];
        if (extent > widest) {
            widest = extent;
            split_dim = j;
        }
    }
    if (widest <= 0.0) {
        return node_id;  // all points identical; keep as one leaf
    }

    const int mid = begin + (end - begin) / 2;
    const double* coords = pts_.data();
    const int d = d_;
    std::nth_element(ids_.begin() + begin, ids_.begin() + mid, ids_.begin() + end,
                     [coords, d, split_dim](int a, int b) {
                         const double ca = coords[static_cast<std::size_t>(a) * d + split_dim];
                         const double cb = coords[static_cast<std::size_t>(b) * d + split_dim];
                         if (ca != cb) return ca < cb;
                         return a < b;
                     });

    const int left = build_node(begin, mid);
    const int right = build_node(mid, end);
    nodes_[node_id].left = left;
    nodes_[node_id].right = right;
    return node_id;
}

double NeighborIndex::box_min_dist(int node, const double* q) const {
    const double* lo = box_lo_.data() + static_cast<std::size_t>(node) * d_;
    const double* hi = box_hi_.data() + static_cast<std::size_t>(node) * d_;
    double dist = 0.0;
    for (int j = 0; j < d_; ++j) {
        double v = lo[j] - q[j];
        if (q[j] - hi[j] > v) v = q[j] - hi[j];
        if (v > dist) dist = v;
    }
    return dist;
}

double NeighborIndex::box_max_dist(int node, const double* q) const {
    const double* lo = box_lo_.data() + static_cast<std::size_t>(node) * d_;
    const double* hi = box_hi_.data() + static_cast<std::size_t>(node) * d_;
    double dist = 0.0;
    for (int j = 0; j < d_; ++j) {
        const double v = std::max(q[j] - lo[j], hi[j] - q[j]);
        if (v > dist) dist = v;
    }
    return dist;
}

void NeighborIndex::knn_search(int node, const double* q, int skip_id, int k,
                               std::vector<double>& heap) const {
    const Node& nd = nodes_[node];
    if (static_cast<int>(heap.size()) == k && box_min_dist(node, q) >= heap.front()) {
        return;
    }
    if (nd.left < 0) {
        for (int pos = nd.begin; pos < nd.end; ++pos) {
            if (ids_[pos] == skip_id) continue;
            const double dist = max_norm(point(pos), q, d_);
            if (static_cast<int>(heap.size()) < k) {
                heap.push_back(dist);
                std::push_heap(heap.begin(), heap.end());
            } else if (dist < heap.front()) {
                std::pop_heap(heap.begin(), heap.end());
                heap.back() = dist;
                std::push_heap(heap.begin(), heap.end());
            }
        }
        return;
    }
    const double dl = box_min_dist(nd.left, q);
    const double dr = box_min_dist(nd.right, q);
    if (dl <= dr) {
        knn_search(nd.left, q, skip_id, k, heap);
        knn_search(nd.right, q, skip_id, k, heap);
    } else {
        knn_search(nd.right, q, skip_id, k, heap);
        knn_search(nd.left, q, skip_id, k, heap);
    }
}

double NeighborIndex::kth_distance_excluding_self(int i, int k) const {
    check_query_point(i, n_);
    if (k < 1 || k > n_ - 1) {
        throw std::invalid_argument("kth_distance_excluding_self: need 1 <= k <= n-1, got k=" +
                                    std::to_string(k) + " with n=" + std::to_string(n_));
    }
    std::vector<double> heap;
    heap.reserve(static_cast<std::size_t>(k));
    knn_search(0, point_by_id(i), i, k, heap);
    return heap.front();
}

double NeighborIndex::kth_distance_including_self(int i, int k_perm) const {
    check_query_point(i, n_);
    if (k_perm < 1 || k_perm > n_) {
        throw std::invalid_argument("kth_distance_including_self: need 1 <= k_perm <= n");
    }
    // Self is the first neighbor at distance zero; the remaining ranks
    // coincide with the excluding-self ordering shifted by one.
    if (k_perm == 1) return 0.0;
    return kth_distance_excluding_self(i, k_perm - 1);
}

int NeighborIndex::count_search(int node, const double* q, double radius) const {
    const Node& nd = nodes_[node];
    if (box_min_dist(node, q) >= radius) return 0;
    if (box_max_dist(node, q) < radius) return nd.end - nd.begin;
    if (nd.left < 0) {
        int count = 0;
        for (int pos = nd.begin; pos < nd.end; ++pos) {
            if (max_norm(point(pos), q, d_) < radius) ++count;
        }
        return count;
    }
    return count_search(nd.left, q, radius) + count_search(nd.right, q, radius);
}

int NeighborIndex::count_strictly_within(const double* center, double radius) const {
    check_radius_positive(radius);
    return count_search(0, center, radius);
}

int NeighborIndex::count_strictly_within(const std::vector<double>& center, double radius) const {
    if (static_cast<int>(center.size()) != d_) {
        throw std::invalid_argument("count_strictly_within: center dimension mismatch");
    }
    return count_strictly_within(center.data(), radius);
}

void NeighborIndex::range_search(int node, const double* q, double radius,
                                 std::vector<int>& out) const {
    const Node& nd = nodes_[node];
    if (box_min_dist(node, q) > radius) return;
    if (box_max_dist(node, q) <= radius) {
        out.insert(out.end(), ids_.begin() + nd.begin, ids_.begin() + nd.end);
        return;
    }
    if (nd.left < 0) {
        for (int pos = nd.begin; pos < nd.end; ++pos) {
            if (max_norm(point(pos), q, d_) <= radius) out.push_back(ids_[pos]);
        }
        return;
    }
    range_search(nd.left, q, radius, out);
    range_search(nd.right, q, radius, out);
}

std::vector<int> NeighborIndex::neighborhood_list(int i, double radius) const {
    check_query_point(i, n_);
    if (radius < 0.0) {
        throw std::invalid_argument("neighborhood_list: radius must be nonnegative");
    }
    std::vector<int> out;
    range_search(0, point_by_id(i), radius, out);
    std::sort(out.begin(), out.end());
    return out;
}

LinearScanIndex::LinearScanIndex(const VariableBlock& points)
    : n_(points.rows()), d_(points.cols()) {
    check_point_set(points);
    pts_.assign(points.flat().begin(), points.flat().end());
}

double LinearScanIndex::kth_distance_excluding_self(int i, int k) const {
    check_query_point(i, n_);
    if (k < 1 || k > n_ - 1) {
        throw std::invalid_argument("kth_distance_excluding_self: need 1 <= k <= n-1");
    }
    const double* q = pts_.data() + static_cast<std::size_t>(i) * d_;
    std::vector<double> dists;
    dists.reserve(static_cast<std::size_t>(n_) - 1);
    for (int j = 0; j < n_; ++j) {
        if (j == i) continue;
        dists.push_back(max_norm(pts_.data() + static_cast<std::size_t>(j) * d_, q, d_));
    }
    std::nth_element(dists.begin(), dists.begin() + (k - 1), dists.end());
    return dists[static_cast<std::size_t>(k) - 1];
}

double LinearScanIndex::kth_distance_including_self(int i, int k_perm) const {
    check_query_point(i, n_);
    if (k_perm < 1 || k_perm > n_) {
        throw std::invalid_argument("kth_distance_including_self: need 1 <= k_perm <= n");
    }
    if (k_perm == 1) return 0.0;
    return kth_distance_excluding_self(i, k_perm - 1);
}

int LinearScanIndex::count_strictly_within(const double* center, double radius) const {
    check_radius_positive(radius);
    int count = 0;
    for (int j = 0; j < n_; ++j) {
        if (max_norm(pts_.data() + static_cast<std::size_t>(j) * d_, center, d_) < radius) ++count;
    }
    return count;
}

int LinearScanIndex::count_strictly_within(const std::vector<double>& center, double radius) const {
    if (static_cast<int>(center.size()) != d_) {
        throw std::invalid_argument("count_strictly_within: center dimension mismatch");
    }
    return count_strictly_within(center.data(), radius);
}

std::vector<int> LinearScanIndex::neighborhood_list(int i, double radius) const {
    check_query_point(i, n_);
    if (radius < 0.0) {
        throw std::invalid_argument("neighborhood_list: radius must be nonnegative");
    }
    const double* q = pts_.data() + static_cast<std::size_t>(i) * d_;
    std::vector<int> out;
    for (int j = 0; j < n_; ++j) {
        if (max_norm(pts_.data() + static_cast<std::size_t>(j) * d_, q, d_) <= radius) {
            out.push_back(j);
        }
    }
    return out;
}

}  // namespace cmiknn
