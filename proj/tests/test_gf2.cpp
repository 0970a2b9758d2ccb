#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ptflab/gf2.hpp"

#include <random>

using namespace ptflab;

namespace {

// Brute force: does any assignment satisfy the system?
bool satisfiable_naive(const GF2Matrix& M, const std::vector<std::uint8_t>& b) {
    for (std::uint64_t a = 0; a < (1ull << M.cols); ++a) {
        bool ok = true;
        for (std::uint32_t r = 0; r < M.rows && ok; ++r) {
            int acc = 0;
            for (std::uint32_t c = 0; c < M.cols; ++c)
                if (M.get(r, c) && ((a >> c) & 1)) acc ^= 1;
            ok = acc == b[r];
        }
        if (ok) return true;
    }
    return M.rows == 0;
}

bool satisfies(const GF2Matrix& M, const std::vector<std::uint8_t>& b,
               const std::vector<std::uint8_t>& a) {
    for (std::uint32_t r = 0; r < M.rows; ++r) {
        int acc = 0;
        for (std::uint32_t c = 0; c < M.cols; ++c)
            if (M.get(r, c) && a[c]) acc ^= 1;
        if (acc != b[r]) return false;
    }
    return true;
}

GF2Matrix random_matrix(std::uint32_t m, std::uint32_t n, std::mt19937_64& g) {
    GF2Matrix M(m, n);
    for (std::uint32_t r = 0; r < m; ++r)
        for (std::uint32_t c = 0; c < n; ++c)
            if (g() & 1) M.set(r, c, true);
    return M;
}

} // namespace

TEST_CASE("bit-packed matrix primitives") {
    GF2Matrix M(2, 70); // spans two words per row
    M.set(0, 3, true);
    M.set(0, 69, true);
    M.set(1, 69, true);
    CHECK(M.get(0, 3));
    CHECK_FALSE(M.get(0, 4));
    CHECK(M.words_per_row == 2);
    M.xor_rows(1, 0);
    CHECK(M.get(1, 3));
    CHECK_FALSE(M.get(1, 69));
    M.set(1, 3, false);
    CHECK(M.row_zero(1));
    CHECK_FALSE(M.row_zero(0));
    M.swap_rows(0, 1);
    CHECK(M.row_zero(0));
}

TEST_CASE("elimination on a pinned example") {
    // x1 + x2 = 1, x2 + x3 = 1, x1 + x3 = 0 -> consistent, rank 2
    GF2Matrix M(3, 3);
    M.set(0, 0, true); M.set(0, 1, true);
    M.set(1, 1, true); M.set(1, 2, true);
    M.set(2, 0, true); M.set(2, 2, true);
    auto ef = gf2_eliminate(M, {1, 1, 0});
    CHECK(ef.consistent);
    CHECK(ef.pivot_cols == std::vector<std::uint32_t>{0, 1});
    auto sol = gf2_solve(M, {1, 1, 0});
    REQUIRE(sol.has_value());
    CHECK(*sol == std::vector<std::uint8_t>{0, 1, 0}); // free x3 = 0
    CHECK(satisfies(M, {1, 1, 0}, *sol));

    // flip one rhs bit -> 0 = 1 row appears
    auto bad = gf2_solve(M, {1, 1, 1});
    CHECK_FALSE(bad.has_value());

    CHECK_THROWS_AS(gf2_eliminate(M, {1, 1}), std::invalid_argument);
}

TEST_CASE("solver agrees with exhaustive satisfiability, all tiny systems") {
    for (std::uint32_t n = 1; n <= 4; ++n) {
        for (std::uint32_t m = 1; m <= 3; ++m) {
            // every matrix bit pattern for the smallest sizes, sampled rhs
            std::uint64_t cells = std::uint64_t(m) * n;
            if (cells > 9) continue;
            for (std::uint64_t pat = 0; pat < (1ull << cells); ++pat) {
                GF2Matrix M(m, n);
                for (std::uint64_t i = 0; i < cells; ++i)
                    if ((pat >> i) & 1) M.set(std::uint32_t(i / n), std::uint32_t(i % n), true);
                for (std::uint64_t bp = 0; bp < (1ull << m); ++bp) {
                    std::vector<std::uint8_t> b(m);
                    for (std::uint32_t i = 0; i < m; ++i) b[i] = (bp >> i) & 1;
                    auto sol = gf2_solve(M, b);
                    REQUIRE(sol.has_value() == satisfiable_naive(M, b));
                    if (sol) REQUIRE(satisfies(M, b, *sol));
                }
            }
        }
    }
}

TEST_CASE("solver resubstitutes on random wide systems") {
    std::mt19937_64 g(13);
    for (int t = 0; t < 1000; ++t) {
        std::uint32_t n = 1 + g() % 64, m = 1 + g() % 64;
        auto M = random_matrix(m, n, g);
        // planted solution guarantees consistency
        std::vector<std::uint8_t> planted(n);
        for (auto& v : planted) v = g() & 1;
        std::vector<std::uint8_t> b(m, 0);
        for (std::uint32_t r = 0; r < m; ++r) {
            int acc = 0;
            for (std::uint32_t c = 0; c < n; ++c)
                if (M.get(r, c) && planted[c]) acc ^= 1;
            b[r] = std::uint8_t(acc);
        }
        auto sol = gf2_solve(M, b);
        REQUIRE(sol.has_value());
        REQUIRE(satisfies(M, b, *sol));
        // solution support lives inside the pivot columns
        auto ef = gf2_eliminate(M, b);
        for (std::uint32_t c = 0; c < n; ++c)
            if ((*sol)[c])
                REQUIRE(std::find(ef.pivot_cols.begin(), ef.pivot_cols.end(), c) !=
                        ef.pivot_cols.end());
    }
}

TEST_CASE("restriction size and sample size formulas") {
    CHECK(restriction_size(128, 3) == 26); // ceil(128^{2/3})
    CHECK(restriction_size(16, 1) == 1);   // n^0
    CHECK(restriction_size(9, 2) == 3);    // exact cube/sqrt values stay exact
    CHECK(restriction_size(100, 2) == 10);
    CHECK_THROWS_AS(restriction_size(4, 5), std::invalid_argument);

    // m = ceil((1/eps)(l log2 n + log2(1/delta)))
    CHECK(occam_sample_size(128, 3, 0.1, 0.05) == 1864);
    CHECK(occam_sample_size(2, 1, 1.0, 0.5) == 2);
    CHECK_THROWS_AS(occam_sample_size(16, 2, 0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(occam_sample_size(16, 2, 0.5, 1.0), std::invalid_argument);
}

TEST_CASE("per-trial success probability") {
    CHECK(trial_success_probability(10, 0, 3) == 1); // nothing to hit
    CHECK(trial_success_probability(8, 8, 8) == 1);  // keep everything
    auto p = trial_success_probability(128, 3, 26);
    Rat expect(15600, 2048256); // C(125,23)/C(128,26)
    expect.canonicalize();
    CHECK(p == expect);
    CHECK(p.get_num() == 325);
    CHECK(p.get_den() == 42672);
    CHECK(trial_success_probability(4, 2, 3) == Rat(1, 2));
    CHECK_THROWS_AS(trial_success_probability(4, 3, 2), std::invalid_argument);
}

TEST_CASE("labelled samples become linear systems") {
    LabeledSample S;
    S.n = 3;
    S.examples = {{{1, 0, 1}, -1}, {{0, 1, 0}, +1}};
    auto [M, b] = sample_system(S, all_columns(3));
    CHECK(M.rows == 2);
    CHECK(M.get(0, 0));
    CHECK_FALSE(M.get(0, 1));
    CHECK(M.get(0, 2));
    CHECK(b == std::vector<std::uint8_t>{1, 0});

    auto [M2, b2] = sample_system(S, {2});
    CHECK(M2.cols == 1);
    CHECK(M2.get(0, 0));
    CHECK_FALSE(M2.get(1, 0));
}

TEST_CASE("single restriction trial embeds a sparse hypothesis") {
    auto target = random_parity(2, 32, 77);
    auto oracle = make_parity_oracle(target, 5);
    LabeledSample S;
    S.n = 32;
    for (int i = 0; i < 200; ++i) S.examples.push_back(oracle());

    int hits = 0;
    for (std::uint64_t t = 0; t < 200; ++t) {
        auto hyp = learn_parity_trial(S, 32, 2, split_seed(99, t));
        if (!hyp) continue;
        ++hits;
        CHECK(hyp->hyp_weight() <= restriction_size(32, 2));
        for (const auto& [x, label] : S.examples)
            REQUIRE(hyp->eval(x) == label);
    }
    CHECK(hits > 0); // success prob ~ C(30,4)/C(32,6) per trial
}

TEST_CASE("full learner recovers small parities") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
        auto target = random_parity(3, 64, seed);
        auto oracle = make_parity_oracle(target, split_seed(seed, 0));
        auto hyp = learn_parity(oracle, 64, 3, 0.05, 0.05, split_seed(seed, 1));
        CHECK(hyp.hyp_weight() <= restriction_size(64, 3));
        CHECK(hyp.trials_used >= 1);
        // holdout error on fresh examples
        int errs = 0;
        auto holdout = make_parity_oracle(target, split_seed(seed, 2));
        for (int i = 0; i < 2000; ++i) {
            auto [x, label] = holdout();
            if (hyp.eval(x) != label) ++errs;
        }
        CHECK(errs <= 200); // well under 2000 * (eps + slack)
    }
}

TEST_CASE("wide restrictions fall back to the plain solver") {
    // k = 1 keeps l = 1 variable; n = 2 forces the 2l >= n branch
    auto target = random_parity(1, 2, 6);
    auto oracle = make_parity_oracle(target, 8);
    auto hyp = learn_parity(oracle, 2, 1, 0.5, 0.25, 11);
    LabeledSample probe;
    probe.n = 2;
    for (int i = 0; i < 50; ++i) probe.examples.push_back(oracle());
    for (const auto& [x, label] : probe.examples) CHECK(hyp.eval(x) == label);
}

TEST_CASE("runs with a fixed seed are reproducible") {
    auto target = random_parity(3, 64, 21);
    auto a = learn_parity(make_parity_oracle(target, 50), 64, 3, 0.1, 0.1, 60);
    auto b = learn_parity(make_parity_oracle(target, 50), 64, 3, 0.1, 0.1, 60);
    CHECK(a.support == b.support);
    CHECK(a.trials_used == b.trials_used);
}
