#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace bstlab::detail {

/// Max segment tree over columns 1..n holding per-column marks (rows),
/// with directional "nearest column whose mark exceeds a threshold" probes.
/// Columns without a mark sit at kNone.
class MaxSegTree {
public:
    static constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::min();

    MaxSegTree() = default;
    explicit MaxSegTree(int n) : n_(n), tree_(2 * size_for(n), kNone) {}

    void assign(int n) {
        n_ = n;
        tree_.assign(2 * size_for(n), kNone);
    }

    void set(int col, std::int64_t value) {
        std::size_t i = leaf(col);
        tree_[i] = value;
        for (i >>= 1; i >= 1; i >>= 1)
            tree_[i] = tree_[2 * i] > tree_[2 * i + 1] ? tree_[2 * i] : tree_[2 * i + 1];
    }

    std::int64_t get(int col) const { return tree_[leaf(col)]; }

    /// Largest column in [lo, hi] with mark > threshold, or 0 if none.
    int rightmost_above(int lo, int hi, std::int64_t threshold) const {
        if (lo > hi || n_ == 0) return 0;
        return descend(1, 1, span(), lo, hi, threshold, /*rightmost=*/true);
    }

    /// Smallest column in [lo, hi] with mark > threshold, or 0 if none.
    int leftmost_above(int lo, int hi, std::int64_t threshold) const {
        if (lo > hi || n_ == 0) return 0;
        return descend(1, 1, span(), lo, hi, threshold, /*rightmost=*/false);
    }

private:
    int n_ = 0;
    std::vector<std::int64_t> tree_;

    static std::size_t size_for(int n) {
        std::size_t s = 1;
        while (s < static_cast<std::size_t>(n < 1 ? 1 : n)) s <<= 1;
        return s;
    }
    int span() const { return static_cast<int>(tree_.size() / 2); }
    std::size_t leaf(int col) const { return tree_.size() / 2 + static_cast<std::size_t>(col - 1); }

    int descend(std::size_t node, int node_lo, int node_hi, int lo, int hi,
                std::int64_t threshold, bool rightmost) const {
        if (node_hi < lo || hi < node_lo || tree_[node] <= threshold) return 0;
        if (node_lo == node_hi) return node_lo;
        int mid = node_lo + (node_hi - node_lo) / 2;
        std::size_t first = rightmost ? 2 * node + 1 : 2 * node;
        std::size_t second = rightmost ? 2 * node : 2 * node + 1;
        int flo = rightmost ? mid + 1 : node_lo;
        int fhi = rightmost ? node_hi : mid;
        int slo = rightmost ? node_lo : mid + 1;
        int shi = rightmost ? mid : node_hi;
        if (int hit = descend(first, flo, fhi, lo, hi, threshold, rightmost)) return hit;
        return descend(second, slo, shi, lo, hi, threshold, rightmost);
    }
};

} // namespace bstlab::detail
