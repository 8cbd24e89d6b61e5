#include "bstlab/greedy.hpp"

#include "bstlab/errors.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <numeric>
#include <random>
#include <sstream>

using namespace bstlab;

TEST_CASE("initial tree shapes") {
    auto balanced = InitialTree::balanced(3);
    CHECK(balanced.root() == 2);
    CHECK(balanced.depth(2) == 1);
    CHECK(balanced.depth(1) == 2);
    CHECK(balanced.max_depth() == 2);
    CHECK(balanced.search_path(1) == std::vector<int>{2, 1});
    CHECK(balanced.search_path(2) == std::vector<int>{2});

    auto path = InitialTree::from_preorder(std::vector<int>{3, 2, 1});
    CHECK(path.max_depth() == 3);
    CHECK(path.search_path(1) == std::vector<int>{3, 2, 1});

    CHECK_THROWS_AS(InitialTree::from_preorder(std::vector<int>{2, 3, 1}),
                    std::invalid_argument); // 1 cannot live in the right subtree of 2
    auto t = InitialTree::from_preorder(std::vector<int>{2, 1, 3});
    CHECK(t.preorder() == std::vector<int>{2, 1, 3});

    std::mt19937_64 seeds(79);
    for (int iter = 0; iter < 50; ++iter) {
        auto shape = InitialTree::random_shape(1 + static_cast<int>(seeds() % 20), seeds());
        CHECK(InitialTree::from_preorder(shape.preorder()).preorder() == shape.preorder());
    }
}

TEST_CASE("initial tree encoding") {
    auto single = encode_initial_tree(InitialTree::from_preorder(std::vector<int>{1}));
    CHECK(weight(single) == 1);
    CHECK(single.contains({1, 0}));

    auto grid = encode_initial_tree(InitialTree::balanced(3));
    // Root column reaches row 0, deeper columns stop lower; common bottom row.
    CHECK(grid.column(2) == std::vector<int>{-1, 0});
    CHECK(grid.column(1) == std::vector<int>{-1});
    CHECK(grid.column(3) == std::vector<int>{-1});
    CHECK(is_satisfied_set(grid));

    std::mt19937_64 seeds(83);
    for (int iter = 0; iter < 30; ++iter) {
        auto tree = InitialTree::random_shape(1 + static_cast<int>(seeds() % 12), seeds());
        CHECK(is_satisfied_set(encode_initial_tree(tree)));
    }
}

TEST_CASE("stair of the first access equals the tree search path") {
    std::mt19937_64 seeds(89);
    for (int iter = 0; iter < 60; ++iter) {
        int n = 1 + static_cast<int>(seeds() % 12);
        auto tree = InitialTree::random_shape(n, seeds());
        StairIndex stairs(n, tree);
        for (int a = 1; a <= n; ++a) {
            auto path = tree.search_path(a);
            std::sort(path.begin(), path.end());
            CHECK(stairs.stair(a) == path);
        }
    }
}

TEST_CASE("stair examples") {
    StairIndex empty(5, std::nullopt);
    CHECK(empty.stair(3) == std::vector<int>{3});

    StairIndex s(3, std::nullopt);
    s.touch(1, 1);
    CHECK(s.stair(2) == std::vector<int>{1, 2});

    StairIndex s2(3, std::nullopt);
    s2.touch(1, 1);              // time 1 touches {1}
    s2.touch(1, 2);              // time 2 touches {1,2}
    s2.touch(2, 2);
    CHECK(s2.stair(3) == std::vector<int>{2, 3});
}

TEST_CASE("stair sweep equals the rectangle definition") {
    std::mt19937_64 seeds(97);
    for (int iter = 0; iter < 200; ++iter) {
        int n = 2 + static_cast<int>(seeds() % 7); // 2..8
        bool with_tree = seeds() % 2 == 0;
        std::optional<InitialTree> tree;
        if (with_tree) tree = InitialTree::random_shape(n, seeds());
        auto x = gen_random_permutation(n, seeds());

        StairIndex stairs(n, tree);
        PointGrid state = tree ? encode_initial_tree(*tree) : PointGrid(n);
        for (int t = 1; t <= n; ++t) {
            int a = x.keys[static_cast<std::size_t>(t - 1)];
            auto sweep = stairs.stair(a);
            auto rect = oracle::stair_rect(state, t, a);
            CHECK(sweep == rect);
            for (int b : sweep) {
                stairs.touch(b, t);
                state.insert({b, t});
            }
        }
    }
}

TEST_CASE("greedy costs on small explicit inputs") {
    CHECK(run_greedy(AccessSequence::permutation({1, 2, 3})).cost() == 5);
    CHECK(run_greedy(AccessSequence::permutation({2, 1})).cost() == 3);

    auto trace = run_greedy(AccessSequence::permutation({1, 2, 3}));
    CHECK(trace.rows()[0].touched == std::vector<int>{1});
    CHECK(trace.rows()[1].touched == std::vector<int>{1, 2});
    CHECK(trace.rows()[2].touched == std::vector<int>{2, 3});
    CHECK(weight(trace.touch_grid()) == 5);
}

TEST_CASE("greedy output is satisfied, with and without initial trees") {
    std::mt19937_64 seeds(101);
    for (int iter = 0; iter < 150; ++iter) {
        int n = 1 + static_cast<int>(seeds() % 16);
        auto x = gen_random_permutation(n, seeds());
        std::optional<InitialTree> tree;
        if (seeds() % 2 == 0) tree = InitialTree::random_shape(n, seeds());
        auto trace = run_greedy(x, tree);
        CHECK(is_satisfied_set(trace.combined_grid()));
        CHECK(trace.cost() >= static_cast<std::size_t>(n));
    }
    // The verifier cross-check the spec pins: n=8, seed=1.
    auto trace = run_greedy(gen_random_permutation(8, 1));
    CHECK(is_satisfied_set(trace.combined_grid()));
}

TEST_CASE("greedy on preorder sequences stays within the linear bound") {
    std::mt19937_64 seeds(103);
    for (int iter = 0; iter < 50; ++iter) {
        int n = 1 + static_cast<int>(seeds() % 64);
        auto x = gen_preorder(n, seeds());
        CHECK(run_greedy(x).cost() <= 4 * static_cast<std::size_t>(n));
    }
}

TEST_CASE("wings accounting on preorder inputs") {
    std::mt19937_64 seeds(107);
    for (int iter = 0; iter < 60; ++iter) {
        int n = 1 + static_cast<int>(seeds() % 24);
        auto x = gen_preorder(n, seeds());
        auto wings = oracle::wings_of_preorder(x);
        std::size_t wing_sum = 0;
        for (int a = 1; a <= n; ++a)
            wing_sum += static_cast<std::size_t>(wings.left[static_cast<std::size_t>(a)] +
                                                 wings.right[static_cast<std::size_t>(a)]);
        CHECK(wing_sum <= 2 * static_cast<std::size_t>(n));

        auto grid = run_greedy(x).touch_grid();
        for (int a = 1; a <= n; ++a) {
            auto touches = grid.column(a).size();
            CHECK(touches <= static_cast<std::size_t>(wings.left[static_cast<std::size_t>(a)] +
                                                      wings.right[static_cast<std::size_t>(a)] + 2));
        }
    }
}

TEST_CASE("sided runs on explicit inputs") {
    auto right = run_greedy_sided(AccessSequence::permutation({1, 2}), std::nullopt, Side::right);
    CHECK(right.cost() == 2);
    auto left = run_greedy_sided(AccessSequence::permutation({1, 2}), std::nullopt, Side::left);
    CHECK(left.cost() == 3);
}

TEST_CASE("sgreedy union cost") {
    auto r = run_sgreedy(AccessSequence::permutation({1, 2}));
    CHECK(r.union_cost == 3);

    auto identity = gen_sequential(16);
    CHECK(run_sgreedy(identity).union_cost == 2 * 16 - 1);

    // Union cost equals the weight of the union grid.
    std::mt19937_64 seeds(109);
    for (int iter = 0; iter < 60; ++iter) {
        int n = 1 + static_cast<int>(seeds() % 12);
        auto x = gen_random_permutation(n, seeds());
        std::optional<InitialTree> tree;
        if (seeds() % 2 == 0) tree = InitialTree::random_shape(n, seeds());
        auto res = run_sgreedy(x, tree);
        PointGrid grid(n);
        for (Point p : res.left.touch_grid().points()) grid.insert(p);
        for (Point p : res.right.touch_grid().points()) grid.insert(p);
        CHECK(res.union_cost == weight(grid));
    }
}

TEST_CASE("hidden-element invariant on exhaustive small inputs") {
    std::vector<int> perm{1, 2, 3, 4, 5, 6};
    for (int n = 1; n <= 6; ++n) {
        std::vector<int> p(perm.begin(), perm.begin() + n);
        do {
            CHECK(oracle::hidden_invariant_holds(run_greedy(AccessSequence::permutation(p))));
        } while (std::next_permutation(p.begin(), p.end()));
    }
}

TEST_CASE("hidden-element invariant with initial trees, sampled") {
    std::mt19937_64 seeds(113);
    for (int iter = 0; iter < 40; ++iter) {
        int n = 2 + static_cast<int>(seeds() % 5);
        auto x = gen_random_permutation(n, seeds());
        auto tree = InitialTree::random_shape(n, seeds());
        CHECK(oracle::hidden_invariant_holds(run_greedy(x, tree)));
    }
}

TEST_CASE("input-revealing avoidance, sampled") {
    // X avoiding (2,3,1) via preorders: Greedy avoids (2,3,1) x Cap,
    // GreedyRight avoids it tensored with (1,2), GreedyLeft with (2,1).
    auto pattern = PatternMatrix::from_permutation(std::vector<int>{2, 3, 1});
    std::mt19937_64 seeds(127);
    for (int iter = 0; iter < 25; ++iter) {
        int n = 4 + static_cast<int>(seeds() % 13); // up to 16
        auto x = gen_preorder(n, seeds());
        auto tree = InitialTree::random_shape(n, seeds());
        CHECK_FALSE(contains_pattern(run_greedy(x, tree).touch_grid(), tensor(pattern, cap_gadget())));
        CHECK_FALSE(contains_pattern(run_greedy_sided(x, tree, Side::right).touch_grid(),
                                     tensor(pattern, PatternMatrix::from_permutation(
                                                         std::vector<int>{1, 2}))));
        CHECK_FALSE(contains_pattern(run_greedy_sided(x, tree, Side::left).touch_grid(),
                                     tensor(pattern, PatternMatrix::from_permutation(
                                                         std::vector<int>{2, 1}))));
    }
}

TEST_CASE("gadget violation checker accepts greedy traces") {
    std::mt19937_64 seeds(131);
    for (int iter = 0; iter < 20; ++iter) {
        int n = 4 + static_cast<int>(seeds() % 13);
        auto x = gen_random_permutation(n, seeds());
        std::optional<InitialTree> tree;
        if (seeds() % 2 == 0) tree = InitialTree::random_shape(n, seeds());
        auto trace = run_greedy(x, tree);
        CHECK(find_gadget_violations(trace, cap_gadget(), GadgetMode::capture).empty());
        CHECK(find_gadget_violations(trace, inc_gadget(3), GadgetMode::k_increasing, 2).empty());
        CHECK(find_gadget_violations(trace, dec_gadget(3), GadgetMode::k_decreasing, 2).empty());
        CHECK(find_gadget_violations(trace, alt_gadget(4), GadgetMode::k_alternating, 3).empty());
    }
}

TEST_CASE("gadget violation checker flags a fabricated trace") {
    // Touch points (1,1),(3,1),(2,2) form the cap with no access nearby.
    std::istringstream in("5 3\ninitial none\n1 *5: 1 3 5\n2 *5: 2 5\n3 *5: 5\n");
    auto trace = read_trace(in);
    auto violations = find_gadget_violations(trace, cap_gadget(), GadgetMode::capture);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].box == Rect{{1, 1}, {3, 2}});
}

TEST_CASE("gadget enumeration respects the node cap") {
    auto x = gen_random_permutation(24, 5);
    auto trace = run_greedy(x);
    CHECK_THROWS_AS(find_gadget_violations(trace, cap_gadget(), GadgetMode::capture, 0, 10),
                    ResourceLimitError);
}

TEST_CASE("trace text round trip") {
    auto x = gen_random_permutation(6, 17);
    auto tree = InitialTree::random_shape(6, 18);
    auto trace = run_greedy(x, tree);
    std::stringstream ss;
    write_trace(ss, trace);
    auto back = read_trace(ss);
    CHECK(back.n() == trace.n());
    CHECK(back.cost() == trace.cost());
    CHECK(back.input().keys == trace.input().keys);
    REQUIRE(back.initial().has_value());
    CHECK(back.initial()->preorder() == tree.preorder());
    for (int t = 0; t < trace.length(); ++t)
        CHECK(back.rows()[static_cast<std::size_t>(t)].touched ==
              trace.rows()[static_cast<std::size_t>(t)].touched);
}
