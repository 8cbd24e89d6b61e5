#include "bstlab/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

namespace bstlab {

namespace {

using Rng = std::mt19937_64;

int uniform_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

} // namespace

bool AccessSequence::is_permutation() const {
    if (length() != n) return false;
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    for (int k : keys) {
        if (seen[static_cast<std::size_t>(k)]) return false;
        seen[static_cast<std::size_t>(k)] = 1;
    }
    return true;
}

AccessSequence AccessSequence::create(int n, std::vector<int> keys) {
    if (n < 1) throw std::invalid_argument("AccessSequence: n must be positive");
    for (int k : keys)
        if (k < 1 || k > n) throw std::invalid_argument("AccessSequence: key out of range");
    return AccessSequence{n, std::move(keys)};
}

AccessSequence AccessSequence::permutation(std::vector<int> keys) {
    int n = static_cast<int>(keys.size());
    auto seq = create(n, std::move(keys));
    if (!seq.is_permutation())
        throw std::invalid_argument("AccessSequence: keys are not a permutation");
    return seq;
}

namespace {

void preorder_shape(Rng& rng, int lo, int hi, std::vector<int>& out) {
    if (lo > hi) return;
    int root = uniform_int(rng, lo, hi);
    out.push_back(root);
    preorder_shape(rng, lo, root - 1, out);
    preorder_shape(rng, root + 1, hi, out);
}

} // namespace

AccessSequence gen_preorder(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_preorder: n must be positive");
    Rng rng(seed);
    std::vector<int> keys;
    keys.reserve(static_cast<std::size_t>(n));
    preorder_shape(rng, 1, n, keys);
    return AccessSequence::permutation(std::move(keys));
}

AccessSequence gen_sequential(int n) {
    if (n < 1) throw std::invalid_argument("gen_sequential: n must be positive");
    std::vector<int> keys(static_cast<std::size_t>(n));
    std::iota(keys.begin(), keys.end(), 1);
    return AccessSequence::permutation(std::move(keys));
}

AccessSequence gen_k_increasing(int n, int k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("gen_k_increasing: k must be at least 2");
    if (n < 1) throw std::invalid_argument("gen_k_increasing: n must be positive");
    if (k > n) throw std::invalid_argument("gen_k_increasing: k must be at most n");
    Rng rng(seed);
    int classes = k - 1;
    std::vector<std::vector<int>> runs(static_cast<std::size_t>(classes));
    for (int v = 1; v <= n; ++v)
        runs[static_cast<std::size_t>(uniform_int(rng, 0, classes - 1))].push_back(v);
    std::vector<std::size_t> next(static_cast<std::size_t>(classes), 0);
    std::vector<int> keys;
    keys.reserve(static_cast<std::size_t>(n));
    int remaining = n;
    while (remaining > 0) {
        int pick = uniform_int(rng, 0, remaining - 1);
        for (std::size_t c = 0; c < runs.size(); ++c) {
            int avail = static_cast<int>(runs[c].size() - next[c]);
            if (pick < avail) {
                keys.push_back(runs[c][next[c]++]);
                break;
            }
            pick -= avail;
        }
        --remaining;
    }
    return AccessSequence::permutation(std::move(keys));
}

namespace {

int build_random_tree(DecompositionTree& tree, Rng& rng, int size, int k, int pos_off,
                      int val_off) {
    if (size == 1) return tree.add_leaf(Block{pos_off, pos_off, val_off, val_off}, {1});
    int arity = uniform_int(rng, 2, std::min(k, size));
    std::vector<int> sizes(static_cast<std::size_t>(arity), size / arity);
    for (int i = 0; i < size % arity; ++i) ++sizes[static_cast<std::size_t>(i)];
    std::shuffle(sizes.begin(), sizes.end(), rng);
    std::vector<int> skeleton(static_cast<std::size_t>(arity));
    std::iota(skeleton.begin(), skeleton.end(), 1);
    std::shuffle(skeleton.begin(), skeleton.end(), rng);
    std::vector<int> val_offsets(static_cast<std::size_t>(arity), val_off);
    for (int i = 0; i < arity; ++i)
        for (int j = 0; j < arity; ++j)
            if (skeleton[static_cast<std::size_t>(j)] < skeleton[static_cast<std::size_t>(i)])
                val_offsets[static_cast<std::size_t>(i)] += sizes[static_cast<std::size_t>(j)];
    std::vector<int> children;
    int p = pos_off;
    for (int i = 0; i < arity; ++i) {
        children.push_back(build_random_tree(tree, rng, sizes[static_cast<std::size_t>(i)], k, p,
                                             val_offsets[static_cast<std::size_t>(i)]));
        p += sizes[static_cast<std::size_t>(i)];
    }
    return tree.add_internal(std::move(skeleton), std::move(children));
}

} // namespace

std::pair<AccessSequence, DecompositionTree> gen_k_decomposable(int n, int k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("gen_k_decomposable: k must be at least 2");
    if (n < 1) throw std::invalid_argument("gen_k_decomposable: n must be positive");
    Rng rng(seed);
    DecompositionTree tree;
    tree.set_root(build_random_tree(tree, rng, n, k, 1, 1));
    auto perm = inflate(tree);
    return {AccessSequence::permutation(std::move(perm)), std::move(tree)};
}

AccessSequence gen_perturbed_grid(int ell) {
    if (ell < 1) throw std::invalid_argument("gen_perturbed_grid: l must be positive");
    struct RawPoint {
        int x, y;
    };
    std::vector<RawPoint> pts;
    pts.reserve(static_cast<std::size_t>(ell) * static_cast<std::size_t>(ell));
    for (int i = 1; i <= ell; ++i)
        for (int j = 1; j <= ell; ++j)
            pts.push_back({i * ell + (j - 1), j * ell + (i - 1)});

    std::vector<int> xs, ys;
    for (auto p : pts) {
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    if (std::adjacent_find(xs.begin(), xs.end()) != xs.end() ||
        std::adjacent_find(ys.begin(), ys.end()) != ys.end())
        throw std::logic_error("gen_perturbed_grid: coordinates collide");

    std::sort(pts.begin(), pts.end(), [](RawPoint a, RawPoint b) { return a.y < b.y; });
    std::vector<int> keys;
    keys.reserve(pts.size());
    for (auto p : pts) {
        auto it = std::lower_bound(xs.begin(), xs.end(), p.x);
        keys.push_back(static_cast<int>(it - xs.begin()) + 1);
    }
    return AccessSequence::permutation(std::move(keys));
}

std::pair<AccessSequence, DecompositionTree> gen_cole_showcase(int n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("gen_cole_showcase: n must be at least 2");
    int b = static_cast<int>(std::floor(std::log2(static_cast<double>(n))));
    if (b < 1 || n % b != 0)
        throw std::invalid_argument("gen_cole_showcase: floor(log2 n) must divide n");
    int r = n / b;
    Rng rng(seed);
    std::vector<int> skeleton(static_cast<std::size_t>(r));
    std::iota(skeleton.begin(), skeleton.end(), 1);
    std::shuffle(skeleton.begin(), skeleton.end(), rng);

    std::vector<int> run(static_cast<std::size_t>(b));
    std::iota(run.begin(), run.end(), 1);
    DecompositionTree tree;
    std::vector<int> children;
    for (int i = 0; i < r; ++i) {
        int val_off = (skeleton[static_cast<std::size_t>(i)] - 1) * b + 1;
        int pos_off = i * b + 1;
        children.push_back(
            tree.add_leaf(Block{pos_off, pos_off + b - 1, val_off, val_off + b - 1}, run));
    }
    tree.set_root(tree.add_internal(skeleton, std::move(children)));
    return {AccessSequence::permutation(inflate(tree)), std::move(tree)};
}

AccessSequence gen_path_preorder(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_path_preorder: n must be positive");
    Rng rng(seed);
    std::vector<int> keys;
    keys.reserve(static_cast<std::size_t>(n));
    int lo = 1, hi = n;
    while (lo < hi) {
        if (uniform_int(rng, 0, 1))
            keys.push_back(hi--);
        else
            keys.push_back(lo++);
    }
    keys.push_back(lo);
    return AccessSequence::permutation(std::move(keys));
}

AccessSequence gen_random_permutation(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_random_permutation: n must be positive");
    Rng rng(seed);
    std::vector<int> keys(static_cast<std::size_t>(n));
    std::iota(keys.begin(), keys.end(), 1);
    std::shuffle(keys.begin(), keys.end(), rng);
    return AccessSequence::permutation(std::move(keys));
}

AccessSequence reversed(const AccessSequence& x) {
    std::vector<int> keys(x.keys.rbegin(), x.keys.rend());
    return AccessSequence::create(x.n, std::move(keys));
}

AccessSequence complemented(const AccessSequence& x) {
    std::vector<int> keys;
    keys.reserve(x.keys.size());
    for (int k : x.keys) keys.push_back(x.n + 1 - k);
    return AccessSequence::create(x.n, std::move(keys));
}

void write_sequence(std::ostream& out, const AccessSequence& x) {
    out << x.n << ' ' << x.length() << '\n';
    for (int i = 0; i < x.length(); ++i) {
        if (i) out << ' ';
        out << x.keys[static_cast<std::size_t>(i)];
    }
    out << '\n';
}

AccessSequence read_sequence(std::istream& in) {
    int n = 0, m = 0;
    if (!(in >> n >> m)) throw std::invalid_argument("read_sequence: bad header");
    std::vector<int> keys(static_cast<std::size_t>(m));
    for (auto& k : keys)
        if (!(in >> k)) throw std::invalid_argument("read_sequence: truncated key list");
    return AccessSequence::create(n, std::move(keys));
}

} // namespace bstlab
