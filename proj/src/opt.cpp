#include "bstlab/opt.hpp"

#include "bstlab/errors.hpp"
#include "bstlab/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace bstlab {

namespace {

// Exact search state over the compressed candidate grid: the input's key
// columns crossed with its access rows.
class OptSearch {
public:
    OptSearch(const AccessSequence& x, std::uint64_t node_cap)
        : node_cap_(node_cap), rows_(x.length()) {
        cols_ = x.keys;
        std::sort(cols_.begin(), cols_.end());
        cols_.erase(std::unique(cols_.begin(), cols_.end()), cols_.end());
        width_ = static_cast<int>(cols_.size());
        present_.assign(static_cast<std::size_t>(width_) * static_cast<std::size_t>(rows_), 0);
        for (int t = 1; t <= rows_; ++t)
            set_cell(col_index(x.keys[static_cast<std::size_t>(t - 1)]), t, 1);
    }

    // Returns the added points (compressed coordinates) of a minimum
    // solution, searching added counts 0..max_added in turn.
    std::optional<std::vector<Point>> solve(int max_added) {
        for (int budget = 0; budget <= max_added; ++budget) {
            added_.clear();
            if (dfs(budget)) return added_;
        }
        return std::nullopt;
    }

    std::uint64_t nodes() const { return nodes_; }
    int key_of(int col_idx) const { return cols_[static_cast<std::size_t>(col_idx - 1)]; }

private:
    std::uint64_t node_cap_;
    std::uint64_t nodes_ = 0;
    int rows_;
    int width_ = 0;
    std::vector<int> cols_;
    std::vector<char> present_; // (row-1)*width + (col-1)
    std::vector<Point> added_;  // compressed (col index, row)

    int col_index(int key) const {
        auto it = std::lower_bound(cols_.begin(), cols_.end(), key);
        return static_cast<int>(it - cols_.begin()) + 1;
    }
    bool cell(int c, int r) const {
        return present_[static_cast<std::size_t>(r - 1) * static_cast<std::size_t>(width_) +
                        static_cast<std::size_t>(c - 1)] != 0;
    }
    void set_cell(int c, int r, char v) {
        present_[static_cast<std::size_t>(r - 1) * static_cast<std::size_t>(width_) +
                 static_cast<std::size_t>(c - 1)] = v;
    }

    bool pair_satisfied(Point p, Point q) const {
        if (p.x == q.x || p.y == q.y) return true;
        int xlo = std::min(p.x, q.x), xhi = std::max(p.x, q.x);
        for (int r = std::min(p.y, q.y); r <= std::max(p.y, q.y); ++r)
            for (int c = xlo; c <= xhi; ++c)
                if (cell(c, r) && !(Point{c, r} == p) && !(Point{c, r} == q)) return true;
        return false;
    }

    // Lowest-then-leftmost unsatisfied rectangle: scan upper corners in
    // (row, col) order, lower corners likewise.
    std::optional<Rect> first_unsatisfied() const {
        for (int qr = 2; qr <= rows_; ++qr)
            for (int qc = 1; qc <= width_; ++qc) {
                if (!cell(qc, qr)) continue;
                for (int pr = 1; pr < qr; ++pr)
                    for (int pc = 1; pc <= width_; ++pc) {
                        if (!cell(pc, pr)) continue;
                        if (!pair_satisfied({pc, pr}, {qc, qr}))
                            return Rect{{pc, pr}, {qc, qr}};
                    }
            }
        return std::nullopt;
    }

    bool dfs(int budget) {
        if (++nodes_ > node_cap_)
            throw ResourceLimitError("brute_force_opt: node cap exceeded", nodes_);
        auto unsat = first_unsatisfied();
        if (!unsat) return true;
        if (budget == 0) return false;
        for (int r = unsat->ymin(); r <= unsat->ymax(); ++r)
            for (int c = unsat->xmin(); c <= unsat->xmax(); ++c) {
                Point cand{c, r};
                if (cell(c, r) || cand == unsat->p || cand == unsat->q) continue;
                set_cell(c, r, 1);
                added_.push_back(cand);
                if (dfs(budget - 1)) return true;
                added_.pop_back();
                set_cell(c, r, 0);
            }
        return false;
    }
};

} // namespace

OptResult brute_force_opt(const AccessSequence& x, const OptLimits& limits) {
    if (x.n > limits.max_keys)
        throw std::invalid_argument("brute_force_opt: key universe exceeds the configured limit");
    OptResult result{0, PointGrid(x.n), 0, 0, true};
    if (x.length() == 0) return result;

    std::size_t greedy_upper = run_greedy(x).cost();
    OptSearch search(x, limits.node_cap);
    try {
        auto added = search.solve(static_cast<int>(greedy_upper) - x.length());
        result.nodes = search.nodes();
        if (!added)
            throw std::logic_error("brute_force_opt: Greedy bound unreachable");
        result.added = static_cast<int>(added->size());
        result.cost = static_cast<std::size_t>(x.length()) + added->size();
        for (int t = 1; t <= x.length(); ++t)
            result.witness.insert({x.keys[static_cast<std::size_t>(t - 1)], t});
        for (Point p : *added) result.witness.insert({search.key_of(p.x), p.y});
    } catch (const ResourceLimitError&) {
        result.nodes = search.nodes();
        result.exact = false;
        result.cost = greedy_upper;
        result.witness = run_greedy(x).touch_grid();
        result.added = static_cast<int>(result.cost) - x.length();
    }
    return result;
}

DecompositionLowerBound decomposition_lower_bound_check(const AccessSequence& x,
                                                        const DecompositionTree& tree,
                                                        const OptLimits& limits) {
    if (auto problem = tree.validate(x.keys))
        throw std::invalid_argument("decomposition_lower_bound_check: " + *problem);
    DecompositionLowerBound out;
    out.opt_whole = brute_force_opt(x, limits).cost;
    for (int i = 0; i < tree.node_count(); ++i) {
        const auto& node = tree.node(i);
        const auto& perm = node.is_leaf() ? node.leaf_perm : node.skeleton;
        out.block_sum += brute_force_opt(AccessSequence::permutation(perm), limits).cost;
    }
    out.rhs = static_cast<long long>(out.block_sum) - 2LL * x.n;
    return out;
}

SplitSequence split_sequence(const AccessSequence& x) {
    int m = x.length();
    // Column layout: keys ascending, each key's first access then its
    // repeats in time order.
    std::vector<std::vector<int>> times_per_key(static_cast<std::size_t>(x.n) + 1);
    for (int t = 1; t <= m; ++t)
        times_per_key[static_cast<std::size_t>(x.keys[static_cast<std::size_t>(t - 1)])]
            .push_back(t);

    SplitSequence out;
    out.column_to_key.assign(static_cast<std::size_t>(m) + 1, 0);
    std::vector<int> col_of_time(static_cast<std::size_t>(m) + 1, 0);
    int next_col = 1;
    for (int key = 1; key <= x.n; ++key)
        for (int t : times_per_key[static_cast<std::size_t>(key)]) {
            out.column_to_key[static_cast<std::size_t>(next_col)] = key;
            col_of_time[static_cast<std::size_t>(t)] = next_col++;
        }
    std::vector<int> keys;
    keys.reserve(static_cast<std::size_t>(m));
    for (int t = 1; t <= m; ++t) keys.push_back(col_of_time[static_cast<std::size_t>(t)]);
    out.perm = m == 0 ? AccessSequence{0, {}} : AccessSequence::permutation(std::move(keys));
    return out;
}

PointGrid merge_grid(const PointGrid& grid, const std::vector<int>& column_to_key,
                     int merged_width) {
    PointGrid out(merged_width);
    for (Point p : grid.points()) {
        if (p.x >= static_cast<int>(column_to_key.size()) ||
            column_to_key[static_cast<std::size_t>(p.x)] == 0)
            throw std::invalid_argument("merge_grid: column map does not cover the grid");
        out.insert({column_to_key[static_cast<std::size_t>(p.x)], p.y});
    }
    return out;
}

PointGrid split_satisfied_construction(const AccessSequence& x, const PointGrid& y) {
    if (y.width() != x.n)
        throw std::invalid_argument("split_satisfied_construction: width mismatch");
    if (!is_satisfied_set(y))
        throw std::invalid_argument("split_satisfied_construction: y is not satisfied");
    for (int t = 1; t <= x.length(); ++t)
        if (!y.contains({x.keys[static_cast<std::size_t>(t - 1)], t}))
            throw std::invalid_argument("split_satisfied_construction: y misses an access point");

    std::vector<std::vector<int>> access_rows(static_cast<std::size_t>(x.n) + 1);
    for (int t = 1; t <= x.length(); ++t)
        access_rows[static_cast<std::size_t>(x.keys[static_cast<std::size_t>(t - 1)])].push_back(t);

    std::vector<std::vector<int>> columns; // rows of each emitted column
    for (int key = 1; key <= x.n; ++key) {
        const auto& acc = access_rows[static_cast<std::size_t>(key)];
        const auto& touch = y.column(key);
        if (acc.size() <= 1) {
            if (!touch.empty()) columns.push_back(touch);
            continue;
        }
        int mk = static_cast<int>(acc.size());
        columns.push_back(touch); // leftmost copy carries every row
        for (int j = 2; j <= mk - 1; ++j)
            columns.push_back({acc[static_cast<std::size_t>(j - 1)],
                               acc[static_cast<std::size_t>(j)]});
        columns.push_back(touch); // rightmost copy carries every row
    }

    PointGrid out(static_cast<int>(columns.size()));
    for (int c = 1; c <= static_cast<int>(columns.size()); ++c)
        for (int r : columns[static_cast<std::size_t>(c - 1)]) out.insert({c, r});
    return out;
}

HardnessSurvey hardness_survey(int n, int samples, std::uint64_t seed, const OptLimits& limits) {
    if (n < 1 || samples < 1)
        throw std::invalid_argument("hardness_survey: n and samples must be positive");
    HardnessSurvey survey;
    survey.n = n;
    survey.exact = n <= 6;

    std::vector<double> values;
    if (survey.exact) {
        double factorial = 1;
        for (int i = 2; i <= n; ++i) factorial *= i;
        std::vector<std::size_t> costs;
        if (factorial <= samples) {
            std::vector<int> perm(static_cast<std::size_t>(n));
            std::iota(perm.begin(), perm.end(), 1);
            do {
                costs.push_back(brute_force_opt(AccessSequence::permutation(perm), limits).cost);
            } while (std::next_permutation(perm.begin(), perm.end()));
        } else {
            for (int s = 0; s < samples; ++s)
                costs.push_back(
                    brute_force_opt(gen_random_permutation(n, seed + static_cast<std::uint64_t>(s)),
                                    limits)
                        .cost);
        }
        std::map<std::size_t, int> hist;
        for (auto c : costs) {
            ++hist[c];
            values.push_back(static_cast<double>(c));
        }
        survey.histogram.assign(hist.begin(), hist.end());
    } else {
        double scale = static_cast<double>(n) * std::log2(static_cast<double>(n));
        for (int s = 0; s < samples; ++s) {
            auto x = gen_random_permutation(n, seed + static_cast<std::uint64_t>(s));
            values.push_back(static_cast<double>(run_sgreedy(x).union_cost) / scale);
        }
    }

    survey.samples = static_cast<int>(values.size());
    survey.min = *std::min_element(values.begin(), values.end());
    survey.max = *std::max_element(values.begin(), values.end());
    survey.mean = std::accumulate(values.begin(), values.end(), 0.0) /
                  static_cast<double>(values.size());
    double var = 0;
    for (double v : values) var += (v - survey.mean) * (v - survey.mean);
    var = values.size() > 1 ? var / static_cast<double>(values.size() - 1) : 0.0;
    survey.stddev = std::sqrt(var);
    survey.ci95_half_width =
        1.96 * survey.stddev / std::sqrt(static_cast<double>(values.size()));
    return survey;
}

} // namespace bstlab
