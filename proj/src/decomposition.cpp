#include "bstlab/decomposition.hpp"

#include "bstlab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bstlab {

namespace {

bool is_permutation_vector(std::span<const int> perm) {
    std::vector<char> seen(perm.size() + 1, 0);
    for (int v : perm) {
        if (v < 1 || v > static_cast<int>(perm.size()) || seen[static_cast<std::size_t>(v)])
            return false;
        seen[static_cast<std::size_t>(v)] = 1;
    }
    return true;
}

void require_permutation(std::span<const int> perm, const char* who) {
    if (!is_permutation_vector(perm))
        throw std::invalid_argument(std::string(who) + ": not a permutation");
}

} // namespace

int DecompositionTree::max_arity() const {
    int arity = 0;
    for (const auto& n : nodes_)
        arity = std::max(arity, static_cast<int>(n.children.size()));
    return arity;
}

int DecompositionTree::add_leaf(const Block& block, std::vector<int> leaf_perm) {
    if (block.size() != static_cast<int>(leaf_perm.size()) ||
        block.val_hi - block.val_lo != block.pos_hi - block.pos_lo)
        throw std::invalid_argument("add_leaf: block and permutation sizes disagree");
    require_permutation(leaf_perm, "add_leaf");
    nodes_.push_back(Node{block, {}, {}, std::move(leaf_perm)});
    return static_cast<int>(nodes_.size()) - 1;
}

int DecompositionTree::add_internal(std::vector<int> skeleton, std::vector<int> children) {
    if (children.size() < 2 || skeleton.size() != children.size())
        throw std::invalid_argument("add_internal: need >= 2 children matching the skeleton");
    require_permutation(skeleton, "add_internal");
    Block block = node(children.front()).block;
    for (std::size_t i = 0; i < children.size(); ++i) {
        const Block& b = node(children[i]).block;
        if (i > 0 && b.pos_lo != node(children[i - 1]).block.pos_hi + 1)
            throw std::invalid_argument("add_internal: children must tile consecutive positions");
        block.pos_hi = b.pos_hi;
        block.val_lo = std::min(block.val_lo, b.val_lo);
        block.val_hi = std::max(block.val_hi, b.val_hi);
    }
    // Skeleton must be order-isomorphic to the children's value intervals.
    std::vector<int> order(children.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return node(children[static_cast<std::size_t>(a)]).block.val_lo <
               node(children[static_cast<std::size_t>(b)]).block.val_lo;
    });
    int covered = 0;
    int expect = block.val_lo;
    for (int idx : order) {
        const Block& b = node(children[static_cast<std::size_t>(idx)]).block;
        if (b.val_lo != expect)
            throw std::invalid_argument("add_internal: children value intervals do not tile");
        expect = b.val_hi + 1;
        covered += b.size();
    }
    if (covered != block.size())
        throw std::invalid_argument("add_internal: children do not cover the block");
    for (std::size_t i = 0; i < children.size(); ++i) {
        int rank = 1;
        for (std::size_t j = 0; j < children.size(); ++j)
            if (node(children[j]).block.val_lo < node(children[i]).block.val_lo) ++rank;
        if (rank != skeleton[i])
            throw std::invalid_argument("add_internal: skeleton does not match children order");
    }
    nodes_.push_back(Node{block, std::move(skeleton), std::move(children), {}});
    return static_cast<int>(nodes_.size()) - 1;
}

DecompositionTree DecompositionTree::single_leaf(std::span<const int> perm) {
    require_permutation(perm, "single_leaf");
    DecompositionTree t;
    int n = static_cast<int>(perm.size());
    t.set_root(t.add_leaf(Block{1, n, 1, n}, std::vector<int>(perm.begin(), perm.end())));
    return t;
}

std::optional<std::string> DecompositionTree::validate(std::span<const int> perm) const {
    if (nodes_.empty()) return "empty tree";
    int n = static_cast<int>(perm.size());
    const Block& rb = node(root_).block;
    if (rb.pos_lo != 1 || rb.pos_hi != n || rb.val_lo != 1 || rb.val_hi != n)
        return "root block does not span the permutation";
    for (int i = 0; i < node_count(); ++i) {
        const Node& nd = node(i);
        const Block& b = nd.block;
        if (b.pos_hi - b.pos_lo != b.val_hi - b.val_lo) return "block is not square";
        int lo = n + 1, hi = 0;
        for (int p = b.pos_lo; p <= b.pos_hi; ++p) {
            int v = perm[static_cast<std::size_t>(p - 1)];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (lo != b.val_lo || hi != b.val_hi) return "block values disagree with the permutation";
        if (nd.is_leaf()) {
            std::vector<int> seg(perm.begin() + (b.pos_lo - 1), perm.begin() + b.pos_hi);
            if (normalize_values(seg) != nd.leaf_perm) return "leaf permutation mismatch";
        } else if (nd.children.size() < 2) {
            return "internal node with fewer than two children";
        }
    }
    return std::nullopt;
}

std::vector<int> normalize_values(std::span<const int> values) {
    std::vector<int> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> out;
    out.reserve(values.size());
    for (int v : values) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
        out.push_back(static_cast<int>(it - sorted.begin()) + 1);
    }
    return out;
}

std::vector<Block> find_blocks(std::span<const int> perm) {
    require_permutation(perm, "find_blocks");
    int n = static_cast<int>(perm.size());
    std::vector<Block> blocks;
    for (int a = 1; a <= n; ++a) {
        int lo = perm[static_cast<std::size_t>(a - 1)];
        int hi = lo;
        for (int b = a + 1; b <= n; ++b) {
            lo = std::min(lo, perm[static_cast<std::size_t>(b - 1)]);
            hi = std::max(hi, perm[static_cast<std::size_t>(b - 1)]);
            int size = b - a + 1;
            if (hi - lo + 1 == size && size < n)
                blocks.push_back(Block{a, b, lo, hi});
        }
    }
    std::vector<Block> maximal;
    for (const Block& b : blocks) {
        bool dominated = false;
        for (const Block& o : blocks)
            if (!(o == b) && o.pos_lo <= b.pos_lo && b.pos_hi <= o.pos_hi) {
                dominated = true;
                break;
            }
        if (!dominated) maximal.push_back(b);
    }
    return maximal;
}

bool is_simple(std::span<const int> perm) {
    require_permutation(perm, "is_simple");
    int n = static_cast<int>(perm.size());
    if (n <= 2) return true;
    for (int a = 1; a <= n; ++a) {
        int lo = perm[static_cast<std::size_t>(a - 1)];
        int hi = lo;
        for (int b = a + 1; b <= n; ++b) {
            lo = std::min(lo, perm[static_cast<std::size_t>(b - 1)]);
            hi = std::max(hi, perm[static_cast<std::size_t>(b - 1)]);
            int size = b - a + 1;
            if (hi - lo + 1 == size && size < n) return false;
        }
    }
    return true;
}

namespace {

// Positions i (1-based, i < s) where the prefix forms a bottom value
// interval {1..i} (plus cuts) or a top interval {s-i+1..s} (skew cuts).
std::vector<int> linear_cuts(std::span<const int> local, bool plus) {
    int s = static_cast<int>(local.size());
    std::vector<int> cuts;
    int mx = 0, mn = s + 1;
    for (int i = 1; i < s; ++i) {
        mx = std::max(mx, local[static_cast<std::size_t>(i - 1)]);
        mn = std::min(mn, local[static_cast<std::size_t>(i - 1)]);
        if (plus ? mx == i : mn == s - i + 1) cuts.push_back(i);
    }
    return cuts;
}

int build_canonical(DecompositionTree& tree, std::span<const int> local, int pos_off, int val_off) {
    int s = static_cast<int>(local.size());
    if (s == 1)
        return tree.add_leaf(Block{pos_off, pos_off, val_off, val_off}, {1});

    for (bool plus : {true, false}) {
        auto cuts = linear_cuts(local, plus);
        if (cuts.empty()) continue;
        cuts.push_back(s);
        int chain = -1;
        int prev = 0;
        for (int cut : cuts) {
            int len = cut - prev;
            std::vector<int> seg(local.begin() + prev, local.begin() + cut);
            int seg_val_base = plus ? prev : s - cut; // local 0-based value offset
            for (int& v : seg) v -= seg_val_base;
            int child =
                build_canonical(tree, seg, pos_off + prev, val_off + seg_val_base);
            (void)len;
            if (chain < 0)
                chain = child;
            else
                chain = tree.add_internal(plus ? std::vector<int>{1, 2} : std::vector<int>{2, 1},
                                          {chain, child});
            prev = cut;
        }
        return chain;
    }

    // Prime case: the maximal proper blocks are pairwise disjoint; together
    // with the uncovered singletons they quotient to a simple skeleton.
    auto blocks = find_blocks(local);
    std::sort(blocks.begin(), blocks.end(),
              [](const Block& a, const Block& b) { return a.pos_lo < b.pos_lo; });
    std::vector<Block> parts;
    int pos = 1;
    for (const Block& b : blocks) {
        if (b.pos_lo < pos)
            throw std::logic_error("decompose: overlapping maximal blocks in prime case");
        while (pos < b.pos_lo) {
            int v = local[static_cast<std::size_t>(pos - 1)];
            parts.push_back(Block{pos, pos, v, v});
            ++pos;
        }
        parts.push_back(b);
        pos = b.pos_hi + 1;
    }
    while (pos <= s) {
        int v = local[static_cast<std::size_t>(pos - 1)];
        parts.push_back(Block{pos, pos, v, v});
        ++pos;
    }
    if (parts.size() < 4)
        throw std::logic_error("decompose: prime quotient smaller than four");

    std::vector<int> children;
    std::vector<int> skeleton;
    for (const Block& part : parts) {
        std::vector<int> seg(local.begin() + (part.pos_lo - 1), local.begin() + part.pos_hi);
        for (int& v : seg) v -= part.val_lo - 1;
        children.push_back(
            build_canonical(tree, seg, pos_off + part.pos_lo - 1, val_off + part.val_lo - 1));
        int rank = 1;
        for (const Block& other : parts)
            if (other.val_lo < part.val_lo) ++rank;
        skeleton.push_back(rank);
    }
    if (!is_simple(skeleton))
        throw std::logic_error("decompose: prime quotient is not simple");
    return tree.add_internal(std::move(skeleton), std::move(children));
}

} // namespace

DecompositionTree decompose(std::span<const int> perm) {
    require_permutation(perm, "decompose");
    if (perm.empty()) throw std::invalid_argument("decompose: empty permutation");
    DecompositionTree tree;
    tree.set_root(build_canonical(tree, perm, 1, 1));
    return tree;
}

std::vector<int> inflate(std::span<const int> skeleton,
                         const std::vector<std::vector<int>>& children) {
    require_permutation(skeleton, "inflate");
    if (children.size() != skeleton.size())
        throw std::invalid_argument("inflate: child count does not match skeleton");
    std::size_t k = skeleton.size();
    std::vector<int> offsets(k, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (skeleton[j] < skeleton[i]) offsets[i] += static_cast<int>(children[j].size());
    std::vector<int> out;
    for (std::size_t i = 0; i < k; ++i) {
        require_permutation(children[i], "inflate");
        for (int v : children[i]) out.push_back(v + offsets[i]);
    }
    return out;
}

namespace {

std::vector<int> inflate_node(const DecompositionTree& tree, int idx) {
    const auto& nd = tree.node(idx);
    if (nd.is_leaf()) return nd.leaf_perm;
    std::vector<std::vector<int>> kids;
    kids.reserve(nd.children.size());
    for (int c : nd.children) kids.push_back(inflate_node(tree, c));
    return inflate(nd.skeleton, kids);
}

} // namespace

std::vector<int> inflate(const DecompositionTree& tree) {
    return inflate_node(tree, tree.root());
}

KDecomposable is_k_decomposable(std::span<const int> perm, int k) {
    if (k < 2) throw std::invalid_argument("is_k_decomposable: k must be at least 2");
    auto tree = decompose(perm);
    for (int i = 0; i < tree.node_count(); ++i)
        if (static_cast<int>(tree.node(i).skeleton.size()) > k) return {false, std::nullopt};
    return {true, std::move(tree)};
}

std::vector<std::vector<int>> enumerate_simple(int k) {
    if (k < 1) throw std::invalid_argument("enumerate_simple: k must be positive");
    if (k > 8)
        throw ResourceLimitError("enumerate_simple: sizes above 8 are not enumerated");
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<std::vector<int>> out;
    do {
        if (is_simple(perm)) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

namespace {

void print_perm(std::ostream& out, std::span<const int> perm) {
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (i) out << ',';
        out << perm[i];
    }
}

void print_node(std::ostream& out, const DecompositionTree& tree, int idx) {
    const auto& nd = tree.node(idx);
    if (nd.is_leaf()) {
        print_perm(out, nd.leaf_perm);
        return;
    }
    out << '(';
    print_perm(out, nd.skeleton);
    out << " |";
    for (int c : nd.children) {
        out << ' ';
        print_node(out, tree, c);
    }
    out << ')';
}

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("tree_from_string: " + what + " at offset " +
                                    std::to_string(pos));
    }

    std::vector<int> perm_list() {
        std::vector<int> out;
        skip_ws();
        while (true) {
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == start) fail("expected integer");
            out.push_back(std::stoi(std::string(text.substr(start, pos - start))));
            if (!eat(',')) break;
        }
        return out;
    }

    struct Shape {
        std::vector<int> skeleton; // empty -> leaf
        std::vector<Shape> children;
        std::vector<int> leaf_perm;
        int size() const {
            if (skeleton.empty()) return static_cast<int>(leaf_perm.size());
            int s = 0;
            for (const auto& c : children) s += c.size();
            return s;
        }
    };

    Shape node() {
        skip_ws();
        Shape sh;
        if (eat('(')) {
            sh.skeleton = perm_list();
            if (!eat('|')) fail("expected '|'");
            while (!eat(')')) {
                if (pos >= text.size()) fail("unterminated node");
                sh.children.push_back(node());
                skip_ws();
            }
            if (sh.children.size() != sh.skeleton.size()) fail("skeleton arity mismatch");
        } else {
            sh.leaf_perm = perm_list();
        }
        return sh;
    }
};

int materialize(DecompositionTree& tree, const Parser::Shape& sh, int pos_off, int val_off) {
    if (sh.skeleton.empty()) {
        int s = static_cast<int>(sh.leaf_perm.size());
        return tree.add_leaf(Block{pos_off, pos_off + s - 1, val_off, val_off + s - 1},
                             sh.leaf_perm);
    }
    std::size_t k = sh.children.size();
    std::vector<int> val_offsets(k, val_off);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (sh.skeleton[j] < sh.skeleton[i]) val_offsets[i] += sh.children[j].size();
    std::vector<int> children;
    int p = pos_off;
    for (std::size_t i = 0; i < k; ++i) {
        children.push_back(materialize(tree, sh.children[i], p, val_offsets[i]));
        p += sh.children[i].size();
    }
    return tree.add_internal(sh.skeleton, std::move(children));
}

} // namespace

std::string tree_to_string(const DecompositionTree& tree) {
    std::ostringstream out;
    print_node(out, tree, tree.root());
    return out.str();
}

DecompositionTree tree_from_string(std::string_view text) {
    Parser parser{text};
    auto shape = parser.node();
    parser.skip_ws();
    if (parser.pos != text.size()) parser.fail("trailing input");
    DecompositionTree tree;
    tree.set_root(materialize(tree, shape, 1, 1));
    return tree;
}

} // namespace bstlab
