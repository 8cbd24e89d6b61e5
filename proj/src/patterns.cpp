#include "bstlab/patterns.hpp"

#include "bstlab/errors.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace bstlab {

PatternMatrix::PatternMatrix(int cols, int rows, std::vector<Point> ones)
    : cols_(cols), rows_(rows), ones_(std::move(ones)) {
    if (cols_ < 0 || rows_ < 0)
        throw std::invalid_argument("PatternMatrix: negative dimensions");
    for (Point p : ones_)
        if (p.x < 1 || p.x > cols_ || p.y < 1 || p.y > rows_)
            throw std::invalid_argument("PatternMatrix: one-entry out of range");
    std::sort(ones_.begin(), ones_.end(),
              [](Point a, Point b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
    if (std::adjacent_find(ones_.begin(), ones_.end()) != ones_.end())
        throw std::invalid_argument("PatternMatrix: duplicate one-entry");
}

PatternMatrix PatternMatrix::from_permutation(std::span<const int> perm) {
    int k = static_cast<int>(perm.size());
    std::vector<Point> ones;
    ones.reserve(perm.size());
    std::vector<char> seen(static_cast<std::size_t>(k) + 1, 0);
    for (int i = 1; i <= k; ++i) {
        int v = perm[static_cast<std::size_t>(i - 1)];
        if (v < 1 || v > k || seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument("from_permutation: not a permutation");
        seen[static_cast<std::size_t>(v)] = 1;
        ones.push_back({v, i});
    }
    return PatternMatrix(k, k, std::move(ones));
}

MatrixKind PatternMatrix::kind() const {
    std::vector<int> per_col(static_cast<std::size_t>(cols_) + 1, 0);
    std::vector<int> per_row(static_cast<std::size_t>(rows_) + 1, 0);
    for (Point p : ones_) {
        ++per_col[static_cast<std::size_t>(p.x)];
        ++per_row[static_cast<std::size_t>(p.y)];
    }
    bool light = cols_ > 0;
    for (int c = 1; c <= cols_; ++c) light &= per_col[static_cast<std::size_t>(c)] == 1;
    if (!light) return MatrixKind::general;
    bool perm = cols_ == rows_;
    for (int r = 1; perm && r <= rows_; ++r) perm &= per_row[static_cast<std::size_t>(r)] == 1;
    return perm ? MatrixKind::permutation : MatrixKind::light;
}

std::vector<int> PatternMatrix::column_rows(int col) const {
    std::vector<int> out;
    for (Point p : ones_)
        if (p.x == col) out.push_back(p.y);
    return out;
}

PatternMatrix tensor(const PatternMatrix& p, const PatternMatrix& g) {
    std::vector<Point> ones;
    ones.reserve(p.ones().size() * g.ones().size());
    for (Point pp : p.ones())
        for (Point gp : g.ones())
            ones.push_back({(pp.x - 1) * g.cols() + gp.x, (pp.y - 1) * g.rows() + gp.y});
    return PatternMatrix(p.cols() * g.cols(), p.rows() * g.rows(), std::move(ones));
}

PatternMatrix cap_gadget() {
    return PatternMatrix(3, 2, {{1, 1}, {3, 1}, {2, 2}});
}

PatternMatrix inc_gadget(int k) {
    if (k < 1) throw std::invalid_argument("inc_gadget: k must be positive");
    std::vector<int> perm(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) perm[static_cast<std::size_t>(i)] = k - i;
    return PatternMatrix::from_permutation(perm);
}

PatternMatrix dec_gadget(int k) {
    if (k < 1) throw std::invalid_argument("dec_gadget: k must be positive");
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 1);
    return PatternMatrix::from_permutation(perm);
}

std::vector<int> alt_permutation(int k) {
    if (k < 1) throw std::invalid_argument("alt_permutation: k must be positive");
    std::vector<int> perm;
    perm.reserve(static_cast<std::size_t>(k));
    perm.push_back((k + 1) / 2);
    int hi = k, lo = 1;
    bool take_hi = true;
    while (static_cast<int>(perm.size()) < k) {
        perm.push_back(take_hi ? hi-- : lo++);
        take_hi = !take_hi;
    }
    return perm;
}

PatternMatrix alt_gadget(int k) {
    return PatternMatrix::from_permutation(alt_permutation(k));
}

PatternMatrix parse_gadget(std::string_view name) {
    if (name == "cap") return cap_gadget();
    auto parse_k = [&](std::string_view prefix) -> std::optional<int> {
        if (!name.starts_with(prefix)) return std::nullopt;
        int k = 0;
        auto rest = name.substr(prefix.size());
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), k);
        if (ec != std::errc{} || ptr != rest.data() + rest.size()) return std::nullopt;
        return k;
    };
    if (auto k = parse_k("inc:")) return inc_gadget(*k);
    if (auto k = parse_k("dec:")) return dec_gadget(*k);
    if (auto k = parse_k("alt:")) return alt_gadget(*k);
    throw std::invalid_argument("unknown gadget: " + std::string(name));
}

namespace {

struct HaystackView {
    int width = 0;
    int row_lo = 1;
    int row_hi = 0;
    std::vector<std::vector<int>> cols; // 1-based, sorted rows
};

HaystackView make_view(const PointGrid& g) {
    HaystackView v;
    v.width = g.width();
    if (!g.empty()) {
        v.row_lo = g.min_row();
        v.row_hi = g.max_row();
    }
    v.cols.resize(static_cast<std::size_t>(v.width) + 1);
    for (int x = 1; x <= v.width; ++x) v.cols[static_cast<std::size_t>(x)] = g.column(x);
    return v;
}

HaystackView make_view(const PatternMatrix& m) {
    HaystackView v;
    v.width = m.cols();
    v.row_lo = 1;
    v.row_hi = m.rows();
    v.cols.resize(static_cast<std::size_t>(v.width) + 1);
    for (Point p : m.ones()) v.cols[static_cast<std::size_t>(p.x)].push_back(p.y);
    return v;
}

constexpr int kUnset = std::numeric_limits<int>::min();

// Column-major backtracking over the needle's one-entries. Column images
// are strictly increasing with room reserved for zero columns; row images
// are kept strictly increasing with room for the rows between them.
class Matcher {
public:
    Matcher(const HaystackView& hay, const PatternMatrix& needle,
            const std::function<bool(std::span<const Point>)>& visit, std::uint64_t cap)
        : hay_(hay), visit_(visit), cap_(cap), total_cols_(needle.cols()),
          total_rows_(needle.rows()), row_img_(static_cast<std::size_t>(needle.rows()) + 1, kUnset) {
        if (needle.ones().empty())
            throw std::invalid_argument("pattern containment: needle has no one-entries");
        for (Point p : needle.ones()) {
            if (cols_.empty() || cols_.back().col != p.x) cols_.push_back({p.x, {}});
            cols_.back().one_rows.push_back(p.y);
        }
        matched_.reserve(needle.ones().size());
    }

    bool run() {
        descend_column(0, 0);
        return found_;
    }

private:
    struct NeedleColumn {
        int col;
        std::vector<int> one_rows;
    };

    const HaystackView& hay_;
    const std::function<bool(std::span<const Point>)>& visit_;
    std::uint64_t cap_;
    std::uint64_t nodes_ = 0;
    int total_cols_;
    int total_rows_;
    std::vector<NeedleColumn> cols_;
    std::vector<int> row_img_;
    std::vector<Point> matched_;
    bool stop_ = false;
    bool found_ = false;

    void tick() {
        if (++nodes_ > cap_)
            throw ResourceLimitError("pattern containment: node cap exceeded", nodes_);
    }

    void descend_column(std::size_t ci, int prev_img) {
        if (stop_) return;
        if (ci == cols_.size()) {
            found_ = true;
            if (!visit_(matched_)) stop_ = true;
            return;
        }
        const auto& nc = cols_[ci];
        int prev_col = ci == 0 ? 0 : cols_[ci - 1].col;
        int lo = ci == 0 ? nc.col : prev_img + (nc.col - prev_col);
        int hi = hay_.width - (total_cols_ - nc.col);
        for (int h = lo; h <= hi && !stop_; ++h) {
            tick();
            match_ones(ci, 0, h);
        }
    }

    void match_ones(std::size_t ci, std::size_t k, int h) {
        if (stop_) return;
        const auto& nc = cols_[ci];
        if (k == nc.one_rows.size()) {
            descend_column(ci + 1, h);
            return;
        }
        int r = nc.one_rows[k];
        const auto& hay_rows = hay_.cols[static_cast<std::size_t>(h)];
        if (row_img_[static_cast<std::size_t>(r)] != kUnset) {
            int y = row_img_[static_cast<std::size_t>(r)];
            if (std::binary_search(hay_rows.begin(), hay_rows.end(), y)) {
                tick();
                matched_.push_back({h, y});
                match_ones(ci, k + 1, h);
                matched_.pop_back();
            }
            return;
        }
        auto [lo, hi] = row_window(r);
        auto first = std::lower_bound(hay_rows.begin(), hay_rows.end(), lo);
        for (auto it = first; it != hay_rows.end() && *it <= hi && !stop_; ++it) {
            tick();
            row_img_[static_cast<std::size_t>(r)] = *it;
            matched_.push_back({h, *it});
            match_ones(ci, k + 1, h);
            matched_.pop_back();
            row_img_[static_cast<std::size_t>(r)] = kUnset;
        }
    }

    std::pair<int, int> row_window(int r) const {
        int lo = hay_.row_lo + (r - 1);
        int hi = hay_.row_hi - (total_rows_ - r);
        for (int rr = r - 1; rr >= 1; --rr)
            if (row_img_[static_cast<std::size_t>(rr)] != kUnset) {
                lo = std::max(lo, row_img_[static_cast<std::size_t>(rr)] + (r - rr));
                break;
            }
        for (int rr = r + 1; rr <= total_rows_; ++rr)
            if (row_img_[static_cast<std::size_t>(rr)] != kUnset) {
                hi = std::min(hi, row_img_[static_cast<std::size_t>(rr)] - (rr - r));
                break;
            }
        return {lo, hi};
    }
};

std::optional<std::vector<Point>> find_in_view(const HaystackView& hay, const PatternMatrix& needle,
                                               const ContainmentLimits& limits) {
    std::optional<std::vector<Point>> out;
    Matcher m(hay, needle,
              [&](std::span<const Point> pts) {
                  out = std::vector<Point>(pts.begin(), pts.end());
                  return false;
              },
              limits.node_cap);
    m.run();
    return out;
}

} // namespace

std::optional<std::vector<Point>> find_pattern(const PointGrid& haystack,
                                               const PatternMatrix& needle,
                                               const ContainmentLimits& limits) {
    return find_in_view(make_view(haystack), needle, limits);
}

std::optional<std::vector<Point>> find_pattern(const PatternMatrix& haystack,
                                               const PatternMatrix& needle,
                                               const ContainmentLimits& limits) {
    return find_in_view(make_view(haystack), needle, limits);
}

bool contains_pattern(const PointGrid& haystack, const PatternMatrix& needle,
                      const ContainmentLimits& limits) {
    return find_pattern(haystack, needle, limits).has_value();
}

bool contains_pattern(const PatternMatrix& haystack, const PatternMatrix& needle,
                      const ContainmentLimits& limits) {
    return find_pattern(haystack, needle, limits).has_value();
}

void for_each_occurrence(const PointGrid& haystack, const PatternMatrix& needle,
                         const std::function<bool(std::span<const Point>)>& visit,
                         const ContainmentLimits& limits) {
    auto view = make_view(haystack);
    Matcher m(view, needle, visit, limits.node_cap);
    m.run();
}

int longest_decreasing(std::span<const int> values) {
    std::vector<int> tails; // tails of strictly increasing subsequences of -x
    for (int x : values) {
        int key = -x;
        auto it = std::lower_bound(tails.begin(), tails.end(), key);
        if (it == tails.end())
            tails.push_back(key);
        else
            *it = key;
    }
    return static_cast<int>(tails.size());
}

int avoidance_parameter(std::span<const int> perm, int k_max) {
    int n = static_cast<int>(perm.size());
    PointGrid grid(std::max(n, 1));
    for (int t = 1; t <= n; ++t) grid.insert({perm[static_cast<std::size_t>(t - 1)], t});
    for (int k = 1; k <= k_max; ++k) {
        std::vector<int> pi(static_cast<std::size_t>(k));
        std::iota(pi.begin(), pi.end(), 1);
        do {
            if (!contains_pattern(grid, PatternMatrix::from_permutation(pi))) return k;
        } while (std::next_permutation(pi.begin(), pi.end()));
    }
    return k_max + 1;
}

} // namespace bstlab
