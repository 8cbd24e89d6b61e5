#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bstlab {

/// A block of a permutation: a contiguous position interval mapped onto a
/// contiguous value interval. Positions are times (rows), values are keys
/// (columns); both 1-based.
struct Block {
    int pos_lo = 0;
    int pos_hi = 0;
    int val_lo = 0;
    int val_hi = 0;

    int size() const { return pos_hi - pos_lo + 1; }
    friend bool operator==(const Block&, const Block&) = default;
};

/// Rooted block decomposition tree. Each internal node carries the skeleton
/// permutation of its ordered (by position) children; each leaf carries the
/// normalized permutation induced by its block.
class DecompositionTree {
public:
    struct Node {
        Block block;
        std::vector<int> skeleton;  // empty for leaves
        std::vector<int> children;  // node indices, position order
        std::vector<int> leaf_perm; // normalized; empty for internal nodes

        bool is_leaf() const { return children.empty(); }
        int size() const { return block.size(); }
    };

    DecompositionTree() = default;

    int root() const { return root_; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    const Node& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    int size() const { return nodes_.empty() ? 0 : node(root_).size(); }
    int max_arity() const;

    /// Checks structural invariants against the permutation the tree claims
    /// to decompose; returns a description of the first problem found.
    std::optional<std::string> validate(std::span<const int> perm) const;

    // Tree assembly, bottom-up. add_internal computes the node's block from
    // its children and checks skeleton consistency.
    int add_leaf(const Block& block, std::vector<int> leaf_perm);
    int add_internal(std::vector<int> skeleton, std::vector<int> children);
    void set_root(int idx) { root_ = idx; }

    static DecompositionTree single_leaf(std::span<const int> perm);

private:
    std::vector<Node> nodes_;
    int root_ = 0;
};

/// Subsequence of the permutation normalized to values 1..len.
std::vector<int> normalize_values(std::span<const int> values);

/// All inclusion-maximal blocks with 1 < size < n. Empty for simple
/// permutations of size >= 3 (and for sizes 1 and 2).
std::vector<Block> find_blocks(std::span<const int> perm);

/// True iff the permutation has only trivial blocks. Sizes 1 and 2 count
/// as simple.
bool is_simple(std::span<const int> perm);

/// Canonical substitution decomposition, deterministic for a fixed input:
/// skeletons are simple of size >= 4, or (1,2)/(2,1) with maximal linear
/// runs broken into left-leaning binary chains; leaves are singletons.
DecompositionTree decompose(std::span<const int> perm);

/// Substitution product: child i fills position slot i and the value slot
/// given by the skeleton's rank at i.
std::vector<int> inflate(std::span<const int> skeleton,
                         const std::vector<std::vector<int>>& children);

/// Reads the permutation a tree denotes (inflate along the structure).
std::vector<int> inflate(const DecompositionTree& tree);

struct KDecomposable {
    bool ok = false;
    std::optional<DecompositionTree> witness;
};

/// A decomposition tree of arity <= k exists iff every simple skeleton of
/// the canonical tree has size <= k; the canonical tree itself (arity
/// max(2, simple sizes)) is returned as witness.
KDecomposable is_k_decomposable(std::span<const int> perm, int k);

/// All simple permutations of size k, in lexicographic order. Guarded at
/// k <= 8; larger sizes raise ResourceLimitError.
std::vector<std::vector<int>> enumerate_simple(int k);

/// Nested text form: leaf = "v1,v2,..."; internal = "(skeleton | child child ...)".
std::string tree_to_string(const DecompositionTree& tree);
DecompositionTree tree_from_string(std::string_view text);

} // namespace bstlab
