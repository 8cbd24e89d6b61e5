#include "bstlab/geometry.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace bstlab;

namespace {

PointGrid grid_of(int width, std::initializer_list<Point> pts) {
    PointGrid g(width);
    for (Point p : pts) g.insert(p);
    return g;
}

} // namespace

TEST_CASE("rectangle satisfaction on explicit grids") {
    auto g1 = grid_of(2, {{1, 1}, {2, 2}});
    CHECK_FALSE(is_rect_satisfied(g1, {{1, 1}, {2, 2}}));

    auto g2 = grid_of(2, {{1, 1}, {2, 1}});
    CHECK(is_rect_satisfied(g2, {{1, 1}, {2, 1}}));

    auto g3 = grid_of(2, {{1, 1}, {2, 2}, {1, 2}});
    CHECK(is_rect_satisfied(g3, {{1, 1}, {2, 2}}));

    CHECK_THROWS_AS(is_rect_satisfied(g1, {{1, 1}, {2, 1}}), std::invalid_argument);
}

TEST_CASE("rectangle satisfaction is symmetric in the corners") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 200; ++iter) {
        PointGrid g(6);
        std::uniform_int_distribution<int> coord(1, 6);
        for (int i = 0; i < 10; ++i) g.insert({coord(rng), coord(rng)});
        auto pts = g.points();
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                CHECK(is_rect_satisfied(g, {pts[i], pts[j]}) ==
                      is_rect_satisfied(g, {pts[j], pts[i]}));
    }
}

TEST_CASE("satisfied-set verifier basics and least witness") {
    CHECK(is_satisfied_set(grid_of(1, {{1, 1}})));

    auto g = grid_of(2, {{1, 1}, {2, 2}});
    auto witness = unsatisfied_witness(g);
    REQUIRE(witness.has_value());
    CHECK(witness->p == Point{1, 1});
    CHECK(witness->q == Point{2, 2});
}

TEST_CASE("verifier agrees with the brute-force pairwise oracle") {
    std::mt19937_64 rng(11);
    int disagreements = 0;
    for (int iter = 0; iter < 3000; ++iter) {
        int w = 1 + static_cast<int>(rng() % 7);
        PointGrid g(w);
        int count = 2 + static_cast<int>(rng() % 12);
        for (int i = 0; i < count; ++i)
            g.insert({1 + static_cast<int>(rng() % w),
                      static_cast<int>(rng() % 9) - 2}); // rows may be <= 0
        if (is_satisfied_set(g) != oracle::satisfied_brute(g)) ++disagreements;
    }
    CHECK(disagreements == 0);
}

TEST_CASE("adding a point never unsatisfies pairs not involving it") {
    std::mt19937_64 rng(13);
    for (int iter = 0; iter < 500; ++iter) {
        int w = 2 + static_cast<int>(rng() % 5);
        PointGrid g(w);
        for (int i = 0; i < 8; ++i)
            g.insert({1 + static_cast<int>(rng() % w), static_cast<int>(rng() % 8)});
        PointGrid extended = g;
        extended.insert({1 + static_cast<int>(rng() % w), static_cast<int>(rng() % 8)});
        auto pts = g.points();
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                if (is_rect_satisfied(g, {pts[i], pts[j]}))
                    CHECK(is_rect_satisfied(extended, {pts[i], pts[j]}));
    }
}

TEST_CASE("weight and membership bookkeeping") {
    PointGrid g(3);
    CHECK(weight(g) == 0);
    CHECK(g.insert({1, 1}));
    CHECK_FALSE(g.insert({1, 1}));
    g.insert({2, -1});
    CHECK(weight(g) == 2);
    CHECK(g.contains({2, -1}));
    CHECK(g.last_touch(2, 0) == -1);
    CHECK_FALSE(g.last_touch(2, -2).has_value());
    CHECK(g.min_row() == -1);
    CHECK(g.max_row() == 1);
}

TEST_CASE("grid text round trip") {
    auto g = grid_of(4, {{1, 1}, {4, 3}, {2, 0}, {3, -2}});
    std::stringstream ss;
    write_grid(ss, g);
    auto back = read_grid(ss);
    CHECK(back.width() == 4);
    CHECK(back.points() == g.points());
}
