#include "bstlab/rgreedy.hpp"

#include <algorithm>
#include <stdexcept>

namespace bstlab {

std::vector<Point> topwing(const PointGrid& grid, const Rect& region) {
    int lo = region.xmin(), hi = region.xmax();
    if (hi < lo) return {};
    std::vector<std::optional<int>> tops(static_cast<std::size_t>(hi - lo + 1));
    for (int c = lo; c <= hi; ++c)
        tops[static_cast<std::size_t>(c - lo)] = grid.top_in_range(c, region.ymin(), region.ymax());

    auto strict_max_scan = [&](bool from_left, std::vector<char>& mark) {
        int best_set = 0;
        int best = 0;
        for (int i = 0; i <= hi - lo; ++i) {
            int c = from_left ? lo + i : hi - i;
            const auto& top = tops[static_cast<std::size_t>(c - lo)];
            if (!top) continue;
            if (!best_set || *top > best) {
                mark[static_cast<std::size_t>(c - lo)] = 1;
                best = *top;
                best_set = 1;
            }
        }
    };
    std::vector<char> keep(tops.size(), 0);
    strict_max_scan(true, keep);
    strict_max_scan(false, keep);
    std::vector<Point> wing;
    for (int c = lo; c <= hi; ++c) {
        std::size_t i = static_cast<std::size_t>(c - lo);
        bool extreme = c == lo || c == hi;
        if (tops[i] && (keep[i] || extreme)) wing.push_back({c, *tops[i]});
    }
    return wing;
}

namespace {

Rect node_rect(const DecompositionTree::Node& node) {
    return Rect{{node.block.val_lo, node.block.pos_lo}, {node.block.val_hi, node.block.pos_hi}};
}

} // namespace

RGreedyResult run_rgreedy(const AccessSequence& x, const DecompositionTree& tree,
                          const std::optional<InitialTree>& initial) {
    if (initial)
        throw std::invalid_argument("run_rgreedy: defined only without an initial tree");
    if (!x.is_permutation())
        throw std::invalid_argument("run_rgreedy: input must be a permutation");
    if (auto problem = tree.validate(x.keys))
        throw std::invalid_argument("run_rgreedy: tree does not decompose the input: " + *problem);

    int n = x.n;
    std::vector<int> parent(static_cast<std::size_t>(tree.node_count()), -1);
    for (int i = 0; i < tree.node_count(); ++i)
        for (int c : tree.node(i).children) parent[static_cast<std::size_t>(c)] = i;

    // Blocks ending at each time, innermost (smallest) first.
    std::vector<std::vector<int>> ends(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i < tree.node_count(); ++i)
        ends[static_cast<std::size_t>(tree.node(i).block.pos_hi)].push_back(i);
    for (auto& chain : ends)
        std::sort(chain.begin(), chain.end(),
                  [&](int a, int b) { return tree.node(a).size() < tree.node(b).size(); });

    StairIndex stairs(n, std::nullopt);
    PointGrid out(n);
    std::vector<TraceRow> rows;
    rows.reserve(static_cast<std::size_t>(n));
    std::vector<std::vector<char>> root_snapshot;

    for (int t = 1; t <= n; ++t) {
        int a = x.keys[static_cast<std::size_t>(t - 1)];
        std::vector<int> touched = stairs.stair(a);
        for (int b : touched) {
            stairs.touch(b, t);
            out.insert({b, t});
        }

        auto project = [&](const Rect& region) {
            for (Point q : topwing(out, region)) {
                if (out.insert({q.x, t})) {
                    stairs.touch(q.x, t);
                    touched.push_back(q.x);
                }
            }
        };

        for (int v : ends[static_cast<std::size_t>(t)]) {
            int p = parent[static_cast<std::size_t>(v)];
            if (p < 0) {
                // Root: snapshot the region occupancy of its deflation, then
                // project its own topwing.
                const auto& root = tree.node(v);
                if (!root.is_leaf()) {
                    int arity = static_cast<int>(root.children.size());
                    std::vector<int> by_value(root.children.begin(), root.children.end());
                    std::sort(by_value.begin(), by_value.end(), [&](int lhs, int rhs) {
                        return tree.node(lhs).block.val_lo < tree.node(rhs).block.val_lo;
                    });
                    root_snapshot.assign(static_cast<std::size_t>(arity),
                                         std::vector<char>(static_cast<std::size_t>(arity), 0));
                    for (int i = 0; i < arity; ++i)
                        for (int j = 0; j < arity; ++j) {
                            const auto& vb = tree.node(by_value[static_cast<std::size_t>(i)]).block;
                            const auto& tb = tree.node(root.children[static_cast<std::size_t>(j)]).block;
                            for (int c = vb.val_lo; c <= vb.val_hi; ++c)
                                if (out.top_in_range(c, tb.pos_lo, tb.pos_hi)) {
                                    root_snapshot[static_cast<std::size_t>(i)]
                                                 [static_cast<std::size_t>(j)] = 1;
                                    break;
                                }
                        }
                }
                project(node_rect(tree.node(v)));
                continue;
            }
            const auto& pnode = tree.node(p);
            const auto& band = tree.node(v).block;
            for (int sibling : pnode.children) {
                const auto& sb = tree.node(sibling).block;
                project(Rect{{sb.val_lo, band.pos_lo}, {sb.val_hi, band.pos_hi}});
            }
        }

        std::sort(touched.begin(), touched.end());
        rows.push_back(TraceRow{a, std::move(touched)});
    }

    return RGreedyResult{ExecutionTrace(x, std::nullopt, std::move(rows)),
                         std::move(root_snapshot)};
}

DecompositionBound decomposition_bound(const AccessSequence& x, const DecompositionTree& tree) {
    DecompositionBound bound;
    bound.lhs = run_rgreedy(x, tree).trace.cost();
    for (int i = 0; i < tree.node_count(); ++i) {
        const auto& node = tree.node(i);
        if (node.is_leaf())
            bound.leaf_total += run_greedy(AccessSequence::permutation(node.leaf_perm)).cost();
        else
            bound.skeleton_total += run_greedy(AccessSequence::permutation(node.skeleton)).cost();
    }
    bound.rhs = 4 * bound.skeleton_total + bound.leaf_total + 3 * static_cast<std::size_t>(x.n);
    return bound;
}

} // namespace bstlab
