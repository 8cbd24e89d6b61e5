#pragma once

#include "bstlab/decomposition.hpp"
#include "bstlab/geometry.hpp"
#include "bstlab/greedy.hpp"
#include "bstlab/sequences.hpp"

#include <optional>
#include <vector>

namespace bstlab {

/// Topwing of a rectangular region at the current grid state: the topmost
/// point of each column that forms an empty rectangle with the region's top
/// left or top right corner, plus the topmost points of the extreme columns.
std::vector<Point> topwing(const PointGrid& grid, const Rect& region);

struct RGreedyResult {
    ExecutionTrace trace;
    /// Root-deflation region occupancy just before the final-row topwing
    /// projection of the root: entry [i][j] says whether the region in value
    /// band i (bottom-up) and time band j was touched. Empty when the root
    /// is a leaf.
    std::vector<std::vector<char>> root_regions_touched;
};

/// Offline robust Greedy driven by a decomposition tree of x: each step
/// performs the Greedy touches, then, for every block ending at that time
/// (smallest first), projects the topwings of all regions aligned with the
/// ending block's time band in its parent's deflation (the block's own
/// region included); the root projects its own topwing after the last
/// access. The run starts from an empty history; passing an initial tree
/// is rejected.
RGreedyResult run_rgreedy(const AccessSequence& x, const DecompositionTree& tree,
                          const std::optional<InitialTree>& initial = std::nullopt);

struct DecompositionBound {
    std::size_t lhs = 0;           // RGreedy cost
    std::size_t rhs = 0;           // 4*skeleton_total + leaf_total + 3n
    std::size_t skeleton_total = 0; // sum of Greedy costs over internal skeletons
    std::size_t leaf_total = 0;     // sum of Greedy costs over leaf permutations
};

/// Runs RGreedy and plain Greedy (empty history) on every skeleton and leaf
/// permutation of the tree; callers assert lhs <= rhs.
DecompositionBound decomposition_bound(const AccessSequence& x, const DecompositionTree& tree);

} // namespace bstlab
