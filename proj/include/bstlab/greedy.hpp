#pragma once

#include "bstlab/detail/segtree.hpp"
#include "bstlab/geometry.hpp"
#include "bstlab/patterns.hpp"
#include "bstlab/sequences.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace bstlab {

/// BST shape over [n]: root plus left/right child structure, every key
/// present exactly once and in search order.
class InitialTree {
public:
    static InitialTree balanced(int n);
    static InitialTree random_shape(int n, std::uint64_t seed);
    static InitialTree from_preorder(std::span<const int> keys);

    int n() const { return n_; }
    int root() const { return root_; }
    int left(int key) const { return left_[static_cast<std::size_t>(key)]; }
    int right(int key) const { return right_[static_cast<std::size_t>(key)]; }
    /// Depth of the root is 1.
    int depth(int key) const { return depth_[static_cast<std::size_t>(key)]; }
    int max_depth() const { return max_depth_; }

    std::vector<int> preorder() const;
    /// Keys on the root-to-key search path, in search order.
    std::vector<int> search_path(int key) const;

private:
    InitialTree() = default;
    void finish(); // computes depths, validates shape

    int n_ = 0;
    int root_ = 0;
    std::vector<int> left_, right_, depth_; // 1-based; 0 = no child
    int max_depth_ = 0;
};

/// Per-column stacks below row 1: column x holds rows 1-d .. 1-d(x), so the
/// stack has height d - d(x) + 1 and the root's tops out at row 0. The grid
/// is satisfied, and the stair of a at time 1 equals path(a, T).
PointGrid encode_initial_tree(const InitialTree& tree);

/// Last-touch index per column plus the staircase probes the stair sweep
/// needs. τ values are rows; columns never touched report no value.
class StairIndex {
public:
    StairIndex(int n, const std::optional<InitialTree>& initial);

    int n() const { return n_; }
    std::optional<int> last_touch(int col) const;
    void touch(int col, int row);

    /// Elements Greedy touches when a is accessed now: a itself plus every
    /// b whose last touch strictly dominates τ over the columns between b
    /// and a inclusive of a. Sorted ascending.
    std::vector<int> stair(int a) const;
    /// Strictly left (right) part of the stair, ascending.
    std::vector<int> stair_left(int a) const;
    std::vector<int> stair_right(int a) const;

private:
    int n_;
    detail::MaxSegTree tau_;
};

struct TraceRow {
    int access = 0;
    std::vector<int> touched; // sorted, includes the access column
};

/// Execution log of one geometric BST run: one output row per access.
class ExecutionTrace {
public:
    ExecutionTrace(AccessSequence input, std::optional<InitialTree> initial,
                   std::vector<TraceRow> rows);

    int n() const { return input_.n; }
    int length() const { return input_.length(); }
    const AccessSequence& input() const { return input_; }
    const std::optional<InitialTree>& initial() const { return initial_; }
    const std::vector<TraceRow>& rows() const { return rows_; }

    /// Number of touch points on rows 1..m; initial-tree stacks are free.
    std::size_t cost() const;

    PointGrid touch_grid() const;    // rows 1..m only
    PointGrid combined_grid() const; // with the initial-tree stacks

private:
    AccessSequence input_;
    std::optional<InitialTree> initial_;
    std::vector<TraceRow> rows_;
};

ExecutionTrace run_greedy(const AccessSequence& x,
                          const std::optional<InitialTree>& initial = std::nullopt);

enum class Side { left, right };

/// One-sided variant: touches the access point plus the left (right) part
/// of the stair only. The output need not be satisfied.
ExecutionTrace run_greedy_sided(const AccessSequence& x,
                                const std::optional<InitialTree>& initial, Side side);

struct SGreedyResult {
    ExecutionTrace left;
    ExecutionTrace right;
    /// Weight of the union of the two touch grids.
    std::size_t union_cost = 0;
};

SGreedyResult run_sgreedy(const AccessSequence& x,
                          const std::optional<InitialTree>& initial = std::nullopt);

enum class GadgetMode { capture, k_increasing, k_decreasing, k_alternating };

struct GadgetViolation {
    Rect box;                      // bounding box of the offending occurrence
    std::vector<Point> occurrence; // matched touch points
};

/// Enumerates every occurrence of the gadget in the touch grid (rows 1..m)
/// and checks the mode's requirement on access points around each bounding
/// box; k is the chain length for the monotone and alternating modes.
/// Throws ResourceLimitError when enumeration exceeds the node cap.
std::vector<GadgetViolation> find_gadget_violations(const ExecutionTrace& trace,
                                                    const PatternMatrix& gadget, GadgetMode mode,
                                                    int k = 0,
                                                    std::uint64_t node_cap = 50'000'000);

/// Trace text format: "n m", then "initial none" or "initial preorder k1..kn",
/// then one line per access: "t *x: b1 b2 ...".
void write_trace(std::ostream& out, const ExecutionTrace& trace);
ExecutionTrace read_trace(std::istream& in);

} // namespace bstlab
