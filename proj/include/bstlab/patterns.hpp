#pragma once

#include "bstlab/geometry.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace bstlab {

enum class MatrixKind { permutation, light, general };

/// 0/1 matrix given by the positions of its ones, written bottom-to-top:
/// (col, row) with row 1 the bottom-most. Permutations π are encoded with
/// ones at (π_i, i).
class PatternMatrix {
public:
    PatternMatrix(int cols, int rows, std::vector<Point> ones);

    static PatternMatrix from_permutation(std::span<const int> perm);

    int cols() const { return cols_; }
    int rows() const { return rows_; }
    const std::vector<Point>& ones() const { return ones_; }
    MatrixKind kind() const;

    /// Ones of one column, rows ascending.
    std::vector<int> column_rows(int col) const;

    friend bool operator==(const PatternMatrix&, const PatternMatrix&) = default;

private:
    int cols_;
    int rows_;
    std::vector<Point> ones_; // sorted by (x, y)
};

/// Replaces every one-entry of p by a copy of g (block tensor product).
PatternMatrix tensor(const PatternMatrix& p, const PatternMatrix& g);

/// Light 3x2 gadget with ones at (1,1), (3,1), (2,2).
PatternMatrix cap_gadget();
/// The permutation (k, k-1, ..., 1).
PatternMatrix inc_gadget(int k);
/// The permutation (1, 2, ..., k).
PatternMatrix dec_gadget(int k);
/// The permutation (floor((k+1)/2), k, 1, k-1, 2, ...).
PatternMatrix alt_gadget(int k);
std::vector<int> alt_permutation(int k);

/// Parses "cap", "inc:k", "dec:k" or "alt:k".
PatternMatrix parse_gadget(std::string_view name);

struct ContainmentLimits {
    std::uint64_t node_cap = 50'000'000;
};

/// Order-preserving containment of needle in the haystack: some strictly
/// increasing column and row injections map every one of needle onto a
/// haystack point. Returns the matched points (needle-one order) if found.
std::optional<std::vector<Point>> find_pattern(const PointGrid& haystack,
                                               const PatternMatrix& needle,
                                               const ContainmentLimits& limits = {});
std::optional<std::vector<Point>> find_pattern(const PatternMatrix& haystack,
                                               const PatternMatrix& needle,
                                               const ContainmentLimits& limits = {});

bool contains_pattern(const PointGrid& haystack, const PatternMatrix& needle,
                      const ContainmentLimits& limits = {});
bool contains_pattern(const PatternMatrix& haystack, const PatternMatrix& needle,
                      const ContainmentLimits& limits = {});

/// Visits every occurrence (matched points, in needle-one order) until the
/// callback returns false. Throws ResourceLimitError past the node cap.
void for_each_occurrence(const PointGrid& haystack, const PatternMatrix& needle,
                         const std::function<bool(std::span<const Point>)>& visit,
                         const ContainmentLimits& limits = {});

/// Length of the longest strictly decreasing subsequence (patience sorting).
/// X avoids (k,...,1) iff the result is at most k-1.
int longest_decreasing(std::span<const int> values);

/// Smallest k <= k_max such that some pattern in S_k is avoided by the
/// permutation; k_max+1 when every S_k up to k_max is fully contained.
int avoidance_parameter(std::span<const int> perm, int k_max);

} // namespace bstlab
