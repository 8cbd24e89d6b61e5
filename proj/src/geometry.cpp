#include "bstlab/geometry.hpp"

#include "bstlab/detail/segtree.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace bstlab {

bool PointGrid::insert(Point p) {
    if (p.x < 1 || p.x > width_)
        throw std::invalid_argument("PointGrid::insert: column out of range");
    if (!members_.insert(key(p)).second) return false;
    auto& row = rows_[p.y];
    row.insert(std::upper_bound(row.begin(), row.end(), p.x), p.x);
    auto& col = columns_[static_cast<std::size_t>(p.x)];
    col.insert(std::upper_bound(col.begin(), col.end(), p.y), p.y);
    ++size_;
    return true;
}

bool PointGrid::contains(Point p) const {
    return members_.count(key(p)) != 0;
}

const std::vector<int>& PointGrid::column(int x) const {
    if (x < 1 || x > width_)
        throw std::invalid_argument("PointGrid::column: column out of range");
    return columns_[static_cast<std::size_t>(x)];
}

std::optional<int> PointGrid::last_touch(int col, int max_row) const {
    const auto& ys = column(col);
    auto it = std::upper_bound(ys.begin(), ys.end(), max_row);
    if (it == ys.begin()) return std::nullopt;
    return *std::prev(it);
}

std::optional<int> PointGrid::top_in_range(int col, int ylo, int yhi) const {
    auto y = last_touch(col, yhi);
    if (!y || *y < ylo) return std::nullopt;
    return y;
}

bool PointGrid::has_point_in(const Rect& r) const {
    for (int x = r.xmin(); x <= r.xmax(); ++x)
        if (top_in_range(x, r.ymin(), r.ymax())) return true;
    return false;
}

std::vector<Point> PointGrid::points_in(const Rect& r) const {
    std::vector<Point> out;
    for (int x = r.xmin(); x <= r.xmax(); ++x) {
        const auto& ys = column(x);
        auto lo = std::lower_bound(ys.begin(), ys.end(), r.ymin());
        auto hi = std::upper_bound(ys.begin(), ys.end(), r.ymax());
        for (auto it = lo; it != hi; ++it) out.push_back({x, *it});
    }
    std::sort(out.begin(), out.end(), [](Point a, Point b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
    });
    return out;
}

std::vector<Point> PointGrid::points() const {
    std::vector<Point> out;
    out.reserve(size_);
    for (const auto& [y, xs] : rows_)
        for (int x : xs) out.push_back({x, y});
    return out;
}

int PointGrid::min_row() const {
    if (rows_.empty()) throw std::invalid_argument("PointGrid::min_row: empty grid");
    return rows_.begin()->first;
}

int PointGrid::max_row() const {
    if (rows_.empty()) throw std::invalid_argument("PointGrid::max_row: empty grid");
    return rows_.rbegin()->first;
}

std::size_t weight(const PointGrid& grid) { return grid.size(); }

bool is_rect_satisfied(const PointGrid& grid, const Rect& r) {
    if (!grid.contains(r.p) || !grid.contains(r.q))
        throw std::invalid_argument("is_rect_satisfied: corner is not a grid point");
    if (r.p.x == r.q.x || r.p.y == r.q.y) return true;
    for (int x = r.xmin(); x <= r.xmax(); ++x) {
        auto top = grid.top_in_range(x, r.ymin(), r.ymax());
        if (!top) continue;
        // Any point in the closed rect other than the two corners witnesses it.
        if (Point{x, *top} != r.p && Point{x, *top} != r.q) return true;
        const auto& low = grid.column(x);
        auto it = std::lower_bound(low.begin(), low.end(), r.ymin());
        if (it != low.end() && *it <= r.ymax()) {
            if (Point{x, *it} != r.p && Point{x, *it} != r.q) return true;
            // Corner columns may hold both a corner and interior points.
            if (std::next(it) != low.end() && *std::next(it) <= r.ymax()) {
                Point mid{x, *std::next(it)};
                if (mid != r.p && mid != r.q) return true;
            }
        }
    }
    return false;
}

namespace {

// Exhaustive pair scan in lexicographic order; used only to report the
// deterministic least witness once the sweep has detected a violation.
Rect lex_least_witness(const PointGrid& grid) {
    auto pts = grid.points(); // sorted by (y, x)
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            Rect r{pts[i], pts[j]};
            if (!is_rect_satisfied(grid, r)) return r;
        }
    }
    throw std::logic_error("lex_least_witness: grid is satisfied");
}

} // namespace

std::optional<Rect> unsatisfied_witness(const PointGrid& grid) {
    if (grid.size() < 2) return std::nullopt;

    // Row sweep. For an upper corner (a,t) the only candidate partners are
    // the topmost points below t of the other columns, and the pair is
    // unsatisfied iff the partner's row beats τ of every column up to and
    // including a, with no row-t point in between. A single directional
    // probe against the running column maxima decides that.
    detail::MaxSegTree tau(grid.width());
    for (const auto& [t, xs] : grid.rows()) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            int a = xs[i];
            std::int64_t own = tau.get(a);
            int left_block = i == 0 ? 0 : xs[i - 1];
            int right_block = i + 1 < xs.size() ? xs[i + 1] : grid.width() + 1;
            if (tau.rightmost_above(left_block + 1, a - 1, own) ||
                tau.leftmost_above(a + 1, right_block - 1, own))
                return lex_least_witness(grid);
        }
        for (int x : xs) tau.set(x, t);
    }
    return std::nullopt;
}

void write_grid(std::ostream& out, const PointGrid& grid) {
    out << grid.width() << ' ' << (grid.empty() ? 0 : grid.max_row()) << '\n';
    for (Point p : grid.points()) out << p.x << ' ' << p.y << '\n';
}

PointGrid read_grid(std::istream& in) {
    int w = 0, h = 0;
    if (!(in >> w >> h)) throw std::invalid_argument("read_grid: bad header");
    PointGrid grid(w);
    int x, y;
    while (in >> x >> y) grid.insert({x, y});
    return grid;
}

} // namespace bstlab
