#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ptflab/boolean.hpp"
#include "ptflab/seed.hpp"
#include "ptflab/serialize.hpp"

#include <random>
#include <set>

using namespace ptflab;

TEST_CASE("decision list evaluation") {
    DecisionList L;
    L.n = 2;
    L.items = {{Literal{0, false}, +1}, {Literal{1, false}, -1}};
    L.default_label = +1;
    CHECK(L.eval({0, 1}) == -1);
    CHECK(L.eval({1, 1}) == +1);
    CHECK(L.eval({0, 0}) == +1);

    DecisionList empty;
    empty.n = 3;
    empty.default_label = -1;
    CHECK(empty.eval({1, 0, 1}) == -1);

    CHECK_THROWS_AS(L.eval({0, 0, 0}), std::invalid_argument);
}

TEST_CASE("modified decision list falls to zero") {
    ModifiedDecisionList f;
    f.n = 2;
    f.items = {{Literal{0, false}, +1}, {Literal{1, false}, -1}};
    CHECK(f.eval({0, 0}) == 0);
    CHECK(f.eval({1, 1}) == +1);
    CHECK(f.eval({0, 1}) == -1);

    ModifiedDecisionList g;
    g.n = 1;
    g.items = {{Literal{0, true}, -1}};
    CHECK(g.eval({0}) == -1);
    CHECK(g.eval({1}) == 0);
}

TEST_CASE("parity / tree evaluation") {
    ParityFunction p;
    p.n = 4;
    p.support = {0, 2};
    CHECK(p.eval({1, 0, 1, 0}) == +1);
    CHECK(p.eval({1, 0, 0, 0}) == -1);

    DecisionTree T;
    T.n = 2;
    int l0 = T.add_leaf(-1), l1 = T.add_leaf(+1);
    T.root = T.add_node(0, l0, l1);
    CHECK(T.eval({1, 0}) == +1);
    CHECK(T.eval({0, 0}) == -1);
    CHECK(T.size() == 2);
}

TEST_CASE("oddmaxbit layout and semantics") {
    auto L1 = oddmaxbit(1);
    REQUIRE(L1.length() == 1);
    CHECK(L1.items[0].second == -1);
    CHECK(L1.default_label == +1);

    auto L2 = oddmaxbit(2);
    CHECK(L2.items[0].second == -1);
    CHECK(L2.items[1].second == +1);
    CHECK(L2.default_label == -1);

    auto L4 = oddmaxbit(4);
    CHECK(L4.eval({0, 0, 1, 0}) == -1); // first set bit at i=3
    CHECK(L4.eval({0, 0, 0, 0}) == -1); // default (-1)^5

    // value is (-1)^i for the first set position, exhaustive up to n=16
    for (std::uint32_t n : {4u, 9u, 16u}) {
        auto L = oddmaxbit(n);
        for (std::uint64_t m = 0; m < (1ull << n); ++m) {
            auto x = mask_to_bits(m, n);
            int expect = ((n + 1) % 2) ? -1 : +1;
            for (std::uint32_t i = 0; i < n; ++i)
                if (x[i]) {
                    expect = ((i + 1) % 2) ? -1 : +1;
                    break;
                }
            REQUIRE(L.eval(x) == expect);
        }
    }
}

TEST_CASE("random generators: determinism and distinct supports") {
    auto a = random_decision_list(3, 8, 7);
    auto b = random_decision_list(3, 8, 7);
    REQUIRE(a.length() == 3);
    CHECK(a.items == b.items);
    CHECK(a.default_label == b.default_label);

    auto empty = random_decision_list(0, 5, 0);
    CHECK(empty.length() == 0);

    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        auto L = random_decision_list(3, 8, seed);
        std::set<std::uint32_t> vars;
        for (const auto& [lit, lbl] : L.items) vars.insert(lit.var);
        REQUIRE(vars.size() == 3);
    }
    CHECK_THROWS_AS(random_decision_list(9, 8, 0), std::invalid_argument);

    auto p = random_parity(4, 10, 3);
    CHECK(p.support.size() == 4);
    CHECK(std::is_sorted(p.support.begin(), p.support.end()));
    CHECK(p.support == random_parity(4, 10, 3).support);
}

TEST_CASE("split_blocks shapes") {
    auto L = random_decision_list(4, 6, 1);
    auto s = split_blocks(L, 2);
    REQUIRE(s.blocks.size() == 2);
    CHECK(s.blocks[0].length() == 2);
    CHECK(s.blocks[1].length() == 2);

    auto L5 = random_decision_list(5, 8, 2);
    auto s5 = split_blocks(L5, 2);
    REQUIRE(s5.blocks.size() == 3);
    CHECK(s5.blocks[2].length() == 1);
    CHECK(s5.default_label == L5.default_label);
}

// The base-2 weighted recomposition of the blocks recovers the list's sign.
TEST_CASE("split_blocks recomposition equals the list everywhere") {
    for (std::uint32_t k : {3u, 4u, 7u, 10u}) {
        for (std::uint32_t h = 1; h <= k; ++h) {
            auto L = random_decision_list(k, k, split_seed(11, k * 100 + h));
            auto s = split_blocks(L, h);
            const std::size_t B = s.blocks.size();
            for (std::uint64_t m = 0; m < (1ull << k); ++m) {
                auto x = mask_to_bits(m, k);
                long long acc = s.default_label;
                for (std::size_t i = 0; i < B; ++i)
                    acc += (1ll << (B - i)) * s.blocks[i].eval(x);
                REQUIRE(acc != 0);
                REQUIRE((acc > 0 ? +1 : -1) == L.eval(x));
            }
        }
    }
}

namespace {

DecisionTree random_tree(std::uint32_t n, std::size_t max_leaves, std::mt19937_64& g) {
    DecisionTree T;
    T.n = n;
    // grow by repeatedly splitting a random leaf with an unused-on-path var
    std::uniform_int_distribution<std::uint32_t> vdist(0, n - 1);
    std::size_t leaves = 1 + g() % max_leaves;
    std::vector<std::pair<int, std::vector<std::uint32_t>>> open; // node, used path vars
    T.root = T.add_leaf((g() & 1) ? +1 : -1);
    open.push_back({T.root, {}});
    std::size_t current = 1;
    while (current < leaves && !open.empty()) {
        std::size_t pick = g() % open.size();
        auto [node, used] = open[pick];
        open.erase(open.begin() + long(pick));
        if (used.size() >= std::size_t(n)) continue;
        std::uint32_t v;
        do {
            v = vdist(g);
        } while (std::find(used.begin(), used.end(), v) != used.end());
        int c0 = T.add_leaf((g() & 1) ? +1 : -1);
        int c1 = T.add_leaf((g() & 1) ? +1 : -1);
        T.nodes[node].var = int(v);
        T.nodes[node].child0 = c0;
        T.nodes[node].child1 = c1;
        auto used2 = used;
        used2.push_back(v);
        open.push_back({c0, used2});
        open.push_back({c1, used2});
        ++current;
    }
    return T;
}

} // namespace

TEST_CASE("tree rank: base cases and recurrence") {
    DecisionTree leaf;
    leaf.n = 1;
    leaf.root = leaf.add_leaf(+1);
    CHECK(tree_rank(leaf) == 0);

    DecisionTree T; // complete depth 2
    T.n = 2;
    int a = T.add_leaf(+1), b = T.add_leaf(-1), c = T.add_leaf(+1), d = T.add_leaf(-1);
    int na = T.add_node(1, a, b), nb = T.add_node(1, c, d);
    T.root = T.add_node(0, na, nb);
    CHECK(tree_rank(T) == 2);

    // caterpillars have rank 1 regardless of size
    for (std::uint32_t depth = 1; depth <= 10; ++depth) {
        DecisionTree C;
        C.n = depth;
        int cur = C.add_leaf(+1);
        for (std::uint32_t i = 0; i < depth; ++i) {
            int leaf2 = C.add_leaf(i % 2 ? +1 : -1);
            cur = C.add_node(int(depth - 1 - i), leaf2, cur);
        }
        C.root = cur;
        CHECK(tree_rank(C) == 1);
    }
}

TEST_CASE("tree_to_rdl: degenerate cases") {
    DecisionTree leaf;
    leaf.n = 3;
    leaf.root = leaf.add_leaf(+1);
    auto L = tree_to_rdl(leaf);
    CHECK(L.length() == 0);
    CHECK(L.default_label == +1);

    DecisionTree T;
    T.n = 1;
    int l0 = T.add_leaf(-1), l1 = T.add_leaf(+1);
    T.root = T.add_node(0, l0, l1);
    auto L1 = tree_to_rdl(T);
    CHECK(L1.r == 1);
    CHECK(L1.length() == 1);
    for (std::uint64_t m = 0; m < 2; ++m)
        CHECK(L1.eval(mask_to_bits(m, 1)) == T.eval(mask_to_bits(m, 1)));
}

TEST_CASE("tree_to_rdl: extensional equality and rank bound, 200 random trees") {
    std::mt19937_64 g(202508);
    for (int t = 0; t < 200; ++t) {
        std::uint32_t n = 4 + g() % 9; // up to 12
        auto T = random_tree(n, 32, g);
        auto L = tree_to_rdl(T);
        std::size_t s = T.size();
        int logceil = 0;
        while ((1ull << logceil) < s) ++logceil;
        CHECK(tree_rank(T) <= logceil);
        CHECK(int(L.r) <= tree_rank(T));
        CHECK(L.length() <= s);
        for (std::uint64_t m = 0; m < (1ull << n); ++m) {
            auto x = mask_to_bits(m, n);
            REQUIRE(L.eval(x) == T.eval(x));
        }
    }
}

TEST_CASE("JSON round trips") {
    auto L = random_decision_list(5, 9, 123);
    auto j = to_json(L);
    CHECK(j["kind"] == "decision_list");
    auto L2 = decision_list_from_json(j);
    CHECK(L2.items == L.items);
    CHECK(L2.default_label == L.default_label);
    CHECK(L2.n == L.n);

    auto p = random_parity(3, 7, 5);
    auto p2 = parity_from_json(to_json(p));
    CHECK(p2.support == p.support);

    BitVec x = {1, 0, 1, 1};
    CHECK(bits_to_string(x) == "1011");
    CHECK(bits_from_string("1011") == x);
}
