#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <unordered_set>
#include <vector>

namespace bstlab {

/// Integer lattice point. x is the key column (1-based), y the time row.
/// Rows may be non-positive: initial-tree stacks live below row 1.
struct Point {
    int x = 0;
    int y = 0;

    friend bool operator==(const Point&, const Point&) = default;
    friend auto operator<=>(const Point&, const Point&) = default;
};

/// Closed axis-aligned rectangle spanned by two corner points.
/// Degenerate rectangles (shared x or y) are satisfied by definition.
struct Rect {
    Point p;
    Point q;

    int xmin() const { return p.x < q.x ? p.x : q.x; }
    int xmax() const { return p.x < q.x ? q.x : p.x; }
    int ymin() const { return p.y < q.y ? p.y : q.y; }
    int ymax() const { return p.y < q.y ? q.y : p.y; }
    bool contains(Point r) const {
        return xmin() <= r.x && r.x <= xmax() && ymin() <= r.y && r.y <= ymax();
    }

    friend bool operator==(const Rect&, const Rect&) = default;
};

/// A finite set of lattice points on columns 1..width, queryable by row,
/// by column and by rectangle. At most one stored point per (x,y).
/// Value-semantic; build it single-threaded, then share read-only.
class PointGrid {
public:
    PointGrid() = default;
    explicit PointGrid(int width) : width_(width), columns_(static_cast<std::size_t>(width) + 1) {}

    int width() const { return width_; }
    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    /// Inserts p; returns false if it was already present.
    bool insert(Point p);
    bool contains(Point p) const;

    /// Rows that hold at least one point, in ascending order, with the
    /// point columns of each row sorted ascending.
    const std::map<int, std::vector<int>>& rows() const { return rows_; }

    /// Sorted row coordinates of the points in column x (1-based).
    const std::vector<int>& column(int x) const;

    /// τ(b,t): the largest row ≤ t holding a point in column b, if any.
    std::optional<int> last_touch(int col, int max_row) const;

    /// Topmost point of column x with row in [ylo, yhi], if any.
    std::optional<int> top_in_range(int col, int ylo, int yhi) const;

    bool has_point_in(const Rect& r) const;
    std::vector<Point> points_in(const Rect& r) const;

    /// All points sorted by (y, x).
    std::vector<Point> points() const;

    int min_row() const;
    int max_row() const;

private:
    int width_ = 0;
    std::size_t size_ = 0;
    std::map<int, std::vector<int>> rows_;       // y -> sorted xs
    std::vector<std::vector<int>> columns_;      // x -> sorted ys
    std::unordered_set<std::uint64_t> members_;

    static std::uint64_t key(Point p) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.x)) << 32) |
               static_cast<std::uint32_t>(p.y);
    }
};

std::size_t weight(const PointGrid& grid);

/// True iff the corners share a coordinate or a third grid point lies in
/// the closed rectangle. Both corners must be points of the grid.
bool is_rect_satisfied(const PointGrid& grid, const Rect& r);

/// Returns the first unsatisfied pair, lexicographically least by (y,x)
/// of both corners, or nullopt when the set is arborally satisfied.
std::optional<Rect> unsatisfied_witness(const PointGrid& grid);

inline bool is_satisfied_set(const PointGrid& grid) {
    return !unsatisfied_witness(grid).has_value();
}

/// Text format: header "w h" (width, max row), then one "x y" line per point.
/// Rows with y ≤ 0 are initial-tree stack points.
void write_grid(std::ostream& out, const PointGrid& grid);
PointGrid read_grid(std::istream& in);

} // namespace bstlab
