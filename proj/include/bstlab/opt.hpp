#pragma once

#include "bstlab/decomposition.hpp"
#include "bstlab/geometry.hpp"
#include "bstlab/sequences.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace bstlab {

struct OptLimits {
    int max_keys = 8;                  // largest key universe accepted
    std::uint64_t node_cap = 10'000'000;
};

struct OptResult {
    std::size_t cost = 0;   // minimal weight when exact; best known bound otherwise
    PointGrid witness;      // satisfied superset achieving cost (exact runs)
    std::uint64_t nodes = 0;
    int added = 0;          // points beyond the access matrix
    bool exact = true;
};

/// Minimum-weight arborally satisfied superset of the access matrix, by
/// iterative deepening on the number of added points. Candidate points are
/// restricted to the input's key columns and access rows. When the node cap
/// is hit the result carries the Greedy upper bound and exact=false.
OptResult brute_force_opt(const AccessSequence& x, const OptLimits& limits = {});

struct DecompositionLowerBound {
    std::size_t opt_whole = 0;
    std::size_t block_sum = 0; // sum of OPT over every tree node's permutation
    long long rhs = 0;         // block_sum - 2n
};

/// Exact OPT of the whole permutation versus the sum of exact OPTs over all
/// tree nodes minus 2n; callers assert opt_whole >= rhs.
DecompositionLowerBound decomposition_lower_bound_check(const AccessSequence& x,
                                                        const DecompositionTree& tree,
                                                        const OptLimits& limits = {});

struct SplitSequence {
    AccessSequence perm;            // permutation over m fresh columns
    std::vector<int> column_to_key; // 1-based split column -> original key
};

/// Integer realization of the column-splitting transform: the first access
/// of each key keeps the key's base column, repeats get fresh columns
/// immediately to its right in time order.
SplitSequence split_sequence(const AccessSequence& x);

/// Collapses columns according to the map (split column -> merged column).
/// Satisfaction is preserved; weight never increases.
PointGrid merge_grid(const PointGrid& grid, const std::vector<int>& column_to_key,
                     int merged_width);

/// Satisfied superset of split(x) built from a satisfied superset y of x:
/// a column with m_i accesses and p_i touch points becomes m_i columns, the
/// outer two carrying all p_i rows and the middle ones two points each.
/// |result| <= 2|y| + 2m.
PointGrid split_satisfied_construction(const AccessSequence& x, const PointGrid& y);

struct HardnessSurvey {
    bool exact = false;       // exact-OPT mode (tiny n) vs SGreedy surrogate
    int n = 0;
    int samples = 0;
    double mean = 0.0;        // OPT (exact mode) or SGreedy/(n log2 n) (surrogate)
    double stddev = 0.0;
    double min = 0.0;
    double max = 0.0;
    double ci95_half_width = 0.0;
    std::vector<std::pair<std::size_t, int>> histogram; // exact mode: cost -> count
};

/// Report-only distribution of instance hardness: exact OPT over S_n for
/// n <= 6 (exhaustive when n! <= samples), otherwise the SGreedy union cost
/// divided by n log2 n over random permutations.
HardnessSurvey hardness_survey(int n, int samples, std::uint64_t seed,
                               const OptLimits& limits = {});

} // namespace bstlab
