#include "bstlab/greedy.hpp"

#include "bstlab/errors.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace bstlab {

namespace {

struct ShapeBuilder {
    std::vector<int> left, right;

    explicit ShapeBuilder(int n)
        : left(static_cast<std::size_t>(n) + 1, 0), right(static_cast<std::size_t>(n) + 1, 0) {}

    int balanced(int lo, int hi) {
        if (lo > hi) return 0;
        int mid = lo + (hi - lo) / 2;
        left[static_cast<std::size_t>(mid)] = balanced(lo, mid - 1);
        right[static_cast<std::size_t>(mid)] = balanced(mid + 1, hi);
        return mid;
    }

    int random(std::mt19937_64& rng, int lo, int hi) {
        if (lo > hi) return 0;
        int root = std::uniform_int_distribution<int>(lo, hi)(rng);
        left[static_cast<std::size_t>(root)] = random(rng, lo, root - 1);
        right[static_cast<std::size_t>(root)] = random(rng, root + 1, hi);
        return root;
    }

    // First key of the span is the root; the keys below it split into the
    // strictly smaller prefix and strictly larger suffix.
    int preorder(std::span<const int> keys, int lo, int hi) {
        if (keys.empty()) return 0;
        int root = keys.front();
        if (root < lo || root > hi)
            throw std::invalid_argument("from_preorder: not a preorder sequence");
        std::size_t split = 1;
        while (split < keys.size() && keys[split] < root) ++split;
        for (std::size_t i = split; i < keys.size(); ++i)
            if (keys[i] < root)
                throw std::invalid_argument("from_preorder: not a preorder sequence");
        left[static_cast<std::size_t>(root)] = preorder(keys.subspan(1, split - 1), lo, root - 1);
        right[static_cast<std::size_t>(root)] = preorder(keys.subspan(split), root + 1, hi);
        return root;
    }
};

} // namespace

void InitialTree::finish() {
    depth_.assign(static_cast<std::size_t>(n_) + 1, 0);
    max_depth_ = 0;
    // Iterative DFS; initial trees can be paths.
    std::vector<std::pair<int, int>> stack{{root_, 1}};
    int visited = 0;
    while (!stack.empty()) {
        auto [key, d] = stack.back();
        stack.pop_back();
        if (key == 0) continue;
        if (key < 1 || key > n_ || depth_[static_cast<std::size_t>(key)] != 0)
            throw std::invalid_argument("InitialTree: malformed shape");
        depth_[static_cast<std::size_t>(key)] = d;
        max_depth_ = std::max(max_depth_, d);
        ++visited;
        stack.push_back({left_[static_cast<std::size_t>(key)], d + 1});
        stack.push_back({right_[static_cast<std::size_t>(key)], d + 1});
    }
    if (visited != n_) throw std::invalid_argument("InitialTree: not every key is present");
}

InitialTree InitialTree::balanced(int n) {
    if (n < 1) throw std::invalid_argument("InitialTree::balanced: n must be positive");
    ShapeBuilder b(n);
    InitialTree t;
    t.n_ = n;
    t.root_ = b.balanced(1, n);
    t.left_ = std::move(b.left);
    t.right_ = std::move(b.right);
    t.finish();
    return t;
}

InitialTree InitialTree::random_shape(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("InitialTree::random_shape: n must be positive");
    std::mt19937_64 rng(seed);
    ShapeBuilder b(n);
    InitialTree t;
    t.n_ = n;
    t.root_ = b.random(rng, 1, n);
    t.left_ = std::move(b.left);
    t.right_ = std::move(b.right);
    t.finish();
    return t;
}

InitialTree InitialTree::from_preorder(std::span<const int> keys) {
    int n = static_cast<int>(keys.size());
    if (n < 1) throw std::invalid_argument("from_preorder: empty sequence");
    ShapeBuilder b(n);
    InitialTree t;
    t.n_ = n;
    t.root_ = b.preorder(keys, 1, n);
    t.left_ = std::move(b.left);
    t.right_ = std::move(b.right);
    t.finish();
    return t;
}

std::vector<int> InitialTree::preorder() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(n_));
    std::vector<int> stack{root_};
    while (!stack.empty()) {
        int key = stack.back();
        stack.pop_back();
        if (key == 0) continue;
        out.push_back(key);
        stack.push_back(right(key));
        stack.push_back(left(key));
    }
    return out;
}

std::vector<int> InitialTree::search_path(int key) const {
    if (key < 1 || key > n_) throw std::invalid_argument("search_path: key out of range");
    std::vector<int> path;
    int cur = root_;
    while (cur != 0) {
        path.push_back(cur);
        if (cur == key) return path;
        cur = key < cur ? left(cur) : right(cur);
    }
    throw std::logic_error("search_path: key not reachable");
}

PointGrid encode_initial_tree(const InitialTree& tree) {
    PointGrid grid(tree.n());
    int d = tree.max_depth();
    for (int x = 1; x <= tree.n(); ++x)
        for (int y = 1 - d; y <= 1 - tree.depth(x); ++y) grid.insert({x, y});
    return grid;
}

StairIndex::StairIndex(int n, const std::optional<InitialTree>& initial) : n_(n), tau_(n) {
    if (!initial) return;
    if (initial->n() != n) throw std::invalid_argument("StairIndex: initial tree size mismatch");
    for (int x = 1; x <= n; ++x) tau_.set(x, 1 - initial->depth(x));
}

std::optional<int> StairIndex::last_touch(int col) const {
    auto v = tau_.get(col);
    if (v == detail::MaxSegTree::kNone) return std::nullopt;
    return static_cast<int>(v);
}

void StairIndex::touch(int col, int row) {
    tau_.set(col, row);
}

std::vector<int> StairIndex::stair_left(int a) const {
    std::vector<int> out;
    std::int64_t threshold = tau_.get(a);
    int pos = a;
    while (int b = tau_.rightmost_above(1, pos - 1, threshold)) {
        out.push_back(b);
        threshold = tau_.get(b);
        pos = b;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<int> StairIndex::stair_right(int a) const {
    std::vector<int> out;
    std::int64_t threshold = tau_.get(a);
    int pos = a;
    while (int b = tau_.leftmost_above(pos + 1, n_, threshold)) {
        out.push_back(b);
        threshold = tau_.get(b);
        pos = b;
    }
    return out;
}

std::vector<int> StairIndex::stair(int a) const {
    auto out = stair_left(a);
    out.push_back(a);
    auto right = stair_right(a);
    out.insert(out.end(), right.begin(), right.end());
    return out;
}

ExecutionTrace::ExecutionTrace(AccessSequence input, std::optional<InitialTree> initial,
                               std::vector<TraceRow> rows)
    : input_(std::move(input)), initial_(std::move(initial)), rows_(std::move(rows)) {
    if (static_cast<int>(rows_.size()) != input_.length())
        throw std::invalid_argument("ExecutionTrace: one row per access required");
    if (initial_ && initial_->n() != input_.n)
        throw std::invalid_argument("ExecutionTrace: initial tree size mismatch");
    for (std::size_t t = 0; t < rows_.size(); ++t) {
        const auto& row = rows_[t];
        if (row.access != input_.keys[t] ||
            !std::binary_search(row.touched.begin(), row.touched.end(), row.access))
            throw std::invalid_argument("ExecutionTrace: access point missing from its row");
    }
}

std::size_t ExecutionTrace::cost() const {
    std::size_t c = 0;
    for (const auto& row : rows_) c += row.touched.size();
    return c;
}

PointGrid ExecutionTrace::touch_grid() const {
    PointGrid grid(n());
    for (int t = 1; t <= length(); ++t)
        for (int b : rows_[static_cast<std::size_t>(t - 1)].touched) grid.insert({b, t});
    return grid;
}

PointGrid ExecutionTrace::combined_grid() const {
    PointGrid grid = initial_ ? encode_initial_tree(*initial_) : PointGrid(n());
    for (int t = 1; t <= length(); ++t)
        for (int b : rows_[static_cast<std::size_t>(t - 1)].touched) grid.insert({b, t});
    return grid;
}

namespace {

ExecutionTrace run_engine(const AccessSequence& x, const std::optional<InitialTree>& initial,
                          const std::optional<Side>& side) {
    StairIndex stairs(x.n, initial);
    std::vector<TraceRow> rows;
    rows.reserve(x.keys.size());
    for (int t = 1; t <= x.length(); ++t) {
        int a = x.keys[static_cast<std::size_t>(t - 1)];
        std::vector<int> touched;
        if (!side) {
            touched = stairs.stair(a);
        } else if (*side == Side::left) {
            touched = stairs.stair_left(a);
            touched.push_back(a);
        } else {
            touched = stairs.stair_right(a);
            touched.insert(touched.begin(), a);
        }
        for (int b : touched) stairs.touch(b, t);
        rows.push_back(TraceRow{a, std::move(touched)});
    }
    return ExecutionTrace(x, initial, std::move(rows));
}

} // namespace

ExecutionTrace run_greedy(const AccessSequence& x, const std::optional<InitialTree>& initial) {
    return run_engine(x, initial, std::nullopt);
}

ExecutionTrace run_greedy_sided(const AccessSequence& x, const std::optional<InitialTree>& initial,
                                Side side) {
    return run_engine(x, initial, side);
}

SGreedyResult run_sgreedy(const AccessSequence& x, const std::optional<InitialTree>& initial) {
    SGreedyResult result{run_greedy_sided(x, initial, Side::left),
                         run_greedy_sided(x, initial, Side::right), 0};
    // The side traces only share their access points, one per row.
    result.union_cost = result.left.cost() + result.right.cost() -
                        static_cast<std::size_t>(x.length());
    return result;
}

namespace {

class AccessIndex {
public:
    explicit AccessIndex(const AccessSequence& x) : keys_(x.keys) {}

    bool any_in(const Rect& box) const {
        for (int t = std::max(box.ymin(), 1);
             t <= std::min<int>(box.ymax(), static_cast<int>(keys_.size())); ++t) {
            int col = keys_[static_cast<std::size_t>(t - 1)];
            if (box.xmin() <= col && col <= box.xmax()) return true;
        }
        return false;
    }

    // Longest strictly increasing (by column) chain of access points with
    // rows in [ymin, ymax], restricted to columns left of the box; the
    // decreasing variant mirrors it on the right.
    int monotone_chain(const Rect& box, bool increasing) const {
        std::vector<int> tails;
        for (int t = std::max(box.ymin(), 1);
             t <= std::min<int>(box.ymax(), static_cast<int>(keys_.size())); ++t) {
            int col = keys_[static_cast<std::size_t>(t - 1)];
            if (increasing ? col >= box.xmin() : col <= box.xmax()) continue;
            int key = increasing ? col : -col;
            auto it = std::lower_bound(tails.begin(), tails.end(), key);
            if (it == tails.end())
                tails.push_back(key);
            else
                *it = key;
        }
        return static_cast<int>(tails.size());
    }

    // Longest chain alternating right-of-box (odd steps) and left-of-box
    // (even steps) in row order; picking the earliest eligible access is
    // optimal, so one pass suffices.
    int alternating_chain(const Rect& box) const {
        int len = 0;
        for (int t = std::max(box.ymin(), 1);
             t <= std::min<int>(box.ymax(), static_cast<int>(keys_.size())); ++t) {
            int col = keys_[static_cast<std::size_t>(t - 1)];
            bool need_right = len % 2 == 0;
            if (need_right ? col > box.xmax() : col < box.xmin()) ++len;
        }
        return len;
    }

private:
    const std::vector<int>& keys_;
};

} // namespace

std::vector<GadgetViolation> find_gadget_violations(const ExecutionTrace& trace,
                                                    const PatternMatrix& gadget, GadgetMode mode,
                                                    int k, std::uint64_t node_cap) {
    if (mode != GadgetMode::capture && k < 1)
        throw std::invalid_argument("find_gadget_violations: chain length k required");
    PointGrid grid = trace.touch_grid();
    AccessIndex access(trace.input());
    std::vector<GadgetViolation> violations;
    std::unordered_set<std::uint64_t> seen;

    auto box_key = [&](const Rect& b) {
        auto pack = [](int v) { return static_cast<std::uint64_t>(static_cast<std::uint16_t>(v)); };
        return pack(b.xmin()) | pack(b.xmax()) << 16 | pack(b.ymin()) << 32 | pack(b.ymax()) << 48;
    };

    for_each_occurrence(
        grid, gadget,
        [&](std::span<const Point> pts) {
            Rect box{pts.front(), pts.front()};
            for (Point p : pts) {
                box.p = {std::min(box.p.x, p.x), std::min(box.p.y, p.y)};
                box.q = {std::max(box.q.x, p.x), std::max(box.q.y, p.y)};
            }
            if (!seen.insert(box_key(box)).second) return true;
            bool ok = access.any_in(box);
            if (!ok) {
                switch (mode) {
                case GadgetMode::capture:
                    break;
                case GadgetMode::k_increasing:
                    ok = access.monotone_chain(box, true) >= k;
                    break;
                case GadgetMode::k_decreasing:
                    ok = access.monotone_chain(box, false) >= k;
                    break;
                case GadgetMode::k_alternating:
                    ok = access.alternating_chain(box) >= k;
                    break;
                }
            }
            if (!ok) violations.push_back({box, std::vector<Point>(pts.begin(), pts.end())});
            return true;
        },
        ContainmentLimits{node_cap});
    return violations;
}

void write_trace(std::ostream& out, const ExecutionTrace& trace) {
    out << trace.n() << ' ' << trace.length() << '\n';
    if (trace.initial()) {
        out << "initial preorder";
        for (int key : trace.initial()->preorder()) out << ' ' << key;
        out << '\n';
    } else {
        out << "initial none\n";
    }
    for (int t = 1; t <= trace.length(); ++t) {
        const auto& row = trace.rows()[static_cast<std::size_t>(t - 1)];
        out << t << " *" << row.access << ':';
        for (int b : row.touched) out << ' ' << b;
        out << '\n';
    }
}

ExecutionTrace read_trace(std::istream& in) {
    int n = 0, m = 0;
    if (!(in >> n >> m)) throw std::invalid_argument("read_trace: bad header");
    std::string word;
    if (!(in >> word) || word != "initial") throw std::invalid_argument("read_trace: bad header");
    if (!(in >> word)) throw std::invalid_argument("read_trace: bad initial-tree spec");
    std::optional<InitialTree> initial;
    if (word == "preorder") {
        std::vector<int> keys(static_cast<std::size_t>(n));
        for (auto& key : keys)
            if (!(in >> key)) throw std::invalid_argument("read_trace: truncated preorder");
        initial = InitialTree::from_preorder(keys);
    } else if (word != "none") {
        throw std::invalid_argument("read_trace: unknown initial-tree spec");
    }
    std::vector<int> keys;
    std::vector<TraceRow> rows;
    std::string line;
    std::getline(in, line);
    for (int t = 1; t <= m; ++t) {
        if (!std::getline(in, line)) throw std::invalid_argument("read_trace: truncated rows");
        std::istringstream ls(line);
        int row_t = 0;
        std::string star;
        if (!(ls >> row_t >> star) || row_t != t || star.size() < 2 || star.front() != '*' ||
            star.back() != ':')
            throw std::invalid_argument("read_trace: malformed row");
        TraceRow row;
        row.access = std::stoi(star.substr(1, star.size() - 2));
        int b;
        while (ls >> b) row.touched.push_back(b);
        std::sort(row.touched.begin(), row.touched.end());
        keys.push_back(row.access);
        rows.push_back(std::move(row));
    }
    return ExecutionTrace(AccessSequence::create(n, std::move(keys)), std::move(initial),
                          std::move(rows));
}

} // namespace bstlab
