#pragma once

#include "bstlab/decomposition.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace bstlab {

/// Access sequence X = (x_1,...,x_m) over the key universe [n], 1-based.
struct AccessSequence {
    int n = 0;
    std::vector<int> keys;

    int length() const { return static_cast<int>(keys.size()); }
    bool is_permutation() const;

    /// Validates 1 <= x_t <= n for all t.
    static AccessSequence create(int n, std::vector<int> keys);
    /// Keys must be a permutation of [keys.size()].
    static AccessSequence permutation(std::vector<int> keys);
};

/// Preorder traversal of a BST shape sampled by uniform recursive
/// root-splitting; the output avoids (2,3,1).
AccessSequence gen_preorder(int n, std::uint64_t seed);

/// (1, 2, ..., n).
AccessSequence gen_sequential(int n);

/// Random interleaving of k-1 increasing subsequences partitioning [n];
/// avoids (k, ..., 1).
AccessSequence gen_k_increasing(int n, int k, std::uint64_t seed);

/// Random decomposition tree of arity <= k with skeletons of size <= k,
/// leaves sized to reach exactly n, inflated to a permutation.
std::pair<AccessSequence, DecompositionTree> gen_k_decomposable(int n, int k, std::uint64_t seed);

/// Rank-compressed perturbation of the l-by-l grid:
/// points (i*l + j - 1, j*l + i - 1) for i,j in [l]. Contains every pattern
/// of size at most l.
AccessSequence gen_perturbed_grid(int ell);

/// Skeleton of size n/b inflated with sequential runs (1..b), b = floor(log2 n);
/// requires b | n.
std::pair<AccessSequence, DecompositionTree> gen_cole_showcase(int n, std::uint64_t seed);

/// Preorder of a random path-shaped BST: each element is the minimum or
/// maximum of the remaining keys. Avoids (2,3,1) and (2,1,3).
AccessSequence gen_path_preorder(int n, std::uint64_t seed);

/// Uniform random permutation via a seeded shuffle.
AccessSequence gen_random_permutation(int n, std::uint64_t seed);

/// Time reversal: X contains P iff reversed(X) contains reversed(P).
AccessSequence reversed(const AccessSequence& x);
/// Value complement: X contains P iff complemented(X) contains complemented(P).
AccessSequence complemented(const AccessSequence& x);

/// File format: "n m" on the first line, the m keys on the second.
void write_sequence(std::ostream& out, const AccessSequence& x);
AccessSequence read_sequence(std::istream& in);

} // namespace bstlab
