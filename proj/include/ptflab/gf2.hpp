#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "ptflab/boolean.hpp"
#include "ptflab/poly.hpp"
#include "ptflab/seed.hpp"

namespace ptflab {

// Bit-packed boolean matrix, row-major, 64-bit words. The label column of a
// linear system rides alongside as a separate 0/1 vector.
struct GF2Matrix {
    std::uint32_t rows = 0;
    std::uint32_t cols = 0;
    std::uint32_t words_per_row = 0;
    std::vector<std::uint64_t> data;

    GF2Matrix() = default;
    GF2Matrix(std::uint32_t m, std::uint32_t n)
        : rows(m), cols(n), words_per_row((n + 63) / 64),
          data(std::size_t(m) * words_per_row, 0) {}

    bool get(std::uint32_t r, std::uint32_t c) const {
        return (data[std::size_t(r) * words_per_row + c / 64] >> (c % 64)) & 1;
    }
    void set(std::uint32_t r, std::uint32_t c, bool v) {
        auto& w = data[std::size_t(r) * words_per_row + c / 64];
        std::uint64_t bit = std::uint64_t(1) << (c % 64);
        w = v ? (w | bit) : (w & ~bit);
    }
    void xor_rows(std::uint32_t dst, std::uint32_t src) {
        auto* d = &data[std::size_t(dst) * words_per_row];
        const auto* s = &data[std::size_t(src) * words_per_row];
        for (std::uint32_t w = 0; w < words_per_row; ++w) d[w] ^= s[w];
    }
    void swap_rows(std::uint32_t a, std::uint32_t b) {
        if (a == b) return;
        auto* pa = &data[std::size_t(a) * words_per_row];
        auto* pb = &data[std::size_t(b) * words_per_row];
        for (std::uint32_t w = 0; w < words_per_row; ++w) std::swap(pa[w], pb[w]);
    }
    bool row_zero(std::uint32_t r) const {
        const auto* p = &data[std::size_t(r) * words_per_row];
        for (std::uint32_t w = 0; w < words_per_row; ++w)
            if (p[w]) return false;
        return true;
    }
};

struct EchelonForm {
    GF2Matrix mat;                      // reduced row-echelon form
    std::vector<std::uint8_t> rhs;      // label column after the same row ops
    std::vector<std::uint32_t> pivot_cols;
    bool consistent = true;             // no 0 = 1 row
};

// Word-parallel Gauss-Jordan over GF(2); pivots taken lowest column first.
inline EchelonForm gf2_eliminate(GF2Matrix M, std::vector<std::uint8_t> b) {
    if (b.size() != M.rows) throw std::invalid_argument("gf2: rhs size mismatch");
    EchelonForm out;
    std::uint32_t r = 0;
    for (std::uint32_t c = 0; c < M.cols && r < M.rows; ++c) {
        std::uint32_t pivot = r;
        while (pivot < M.rows && !M.get(pivot, c)) ++pivot;
        if (pivot == M.rows) continue;
        M.swap_rows(r, pivot);
        std::swap(b[r], b[pivot]);
        for (std::uint32_t i = 0; i < M.rows; ++i) {
            if (i != r && M.get(i, c)) {
                M.xor_rows(i, r);
                b[i] ^= b[r];
            }
        }
        out.pivot_cols.push_back(c);
        ++r;
    }
    for (std::uint32_t i = r; i < M.rows; ++i)
        if (b[i] && M.row_zero(i)) {
            out.consistent = false;
            break;
        }
    out.mat = std::move(M);
    out.rhs = std::move(b);
    return out;
}

// Solution with every free variable set to 0 (support inside pivot columns).
inline std::optional<std::vector<std::uint8_t>> gf2_solve(const GF2Matrix& M,
                                                          const std::vector<std::uint8_t>& b) {
    EchelonForm ef = gf2_eliminate(M, b);
    if (!ef.consistent) return std::nullopt;
    std::vector<std::uint8_t> a(M.cols, 0);
    for (std::size_t t = 0; t < ef.pivot_cols.size(); ++t)
        a[ef.pivot_cols[t]] = ef.rhs[t];
    return a;
}

struct LabeledSample {
    std::uint32_t n = 0;
    std::vector<std::pair<BitVec, int>> examples; // label in {-1,+1}
};

struct ParityHypothesis {
    std::vector<std::uint32_t> support; // sorted variable indices
    std::uint64_t trials_used = 0;

    std::size_t hyp_weight() const { return support.size(); }

    int eval(const BitVec& x) const {
        int ones = 0;
        for (auto v : support) ones ^= x[v];
        return ones ? -1 : +1;
    }
};

// System view of a labelled sample: sum_{i: x_i=1} a_i = (label == -1) mod 2.
inline std::pair<GF2Matrix, std::vector<std::uint8_t>>
sample_system(const LabeledSample& S, const std::vector<std::uint32_t>& cols) {
    GF2Matrix M(std::uint32_t(S.examples.size()), std::uint32_t(cols.size()));
    std::vector<std::uint8_t> b(S.examples.size());
    for (std::uint32_t i = 0; i < S.examples.size(); ++i) {
        const auto& [x, label] = S.examples[i];
        check_dim(x.size(), S.n);
        for (std::uint32_t j = 0; j < cols.size(); ++j)
            if (x[cols[j]]) M.set(i, j, true);
        b[i] = label < 0;
    }
    return {std::move(M), std::move(b)};
}

inline std::vector<std::uint32_t> all_columns(std::uint32_t n) {
    std::vector<std::uint32_t> c(n);
    std::iota(c.begin(), c.end(), 0u);
    return c;
}

// l = ceil(n^{1-1/k}), the number of variables a restriction trial keeps.
inline std::uint32_t restriction_size(std::uint32_t n, std::uint32_t k) {
    if (k < 1 || k > n) throw std::invalid_argument("need 1 <= k <= n");
    double v = std::pow(double(n), 1.0 - 1.0 / double(k));
    auto l = std::uint32_t(std::ceil(v - 1e-9));
    return std::min(std::max(l, 1u), n);
}

// Occam bound with log |H| <= n^{1-1/k} log n, logs base 2.
inline std::uint64_t occam_sample_size(std::uint32_t n, std::uint32_t k,
                                       double eps, double delta) {
    if (!(eps > 0 && eps <= 1) || !(delta > 0 && delta < 1))
        throw std::invalid_argument("need 0 < eps <= 1 and 0 < delta < 1");
    std::uint32_t l = restriction_size(n, k);
    double m = (1.0 / eps) * (double(l) * std::log2(double(n)) + std::log2(1.0 / delta));
    return std::uint64_t(std::ceil(m - 1e-9));
}

// Exact per-trial success probability C(n-k, l-k) / C(n, l).
inline Rat trial_success_probability(std::uint32_t n, std::uint32_t k, std::uint32_t l) {
    if (k > l || l > n) throw std::invalid_argument("need k <= l <= n");
    Rat p = 1;
    for (std::uint32_t i = 1; i <= k; ++i) {
        Rat f(long(l - k + i), long(n - k + i));
        f.canonicalize();
        p *= f;
    }
    return p;
}

// One restriction trial: drop a random set of n - l variables (forcing their
// coefficients to 0), solve what remains, embed back into n coordinates.
inline std::optional<ParityHypothesis> learn_parity_trial(const LabeledSample& S,
                                                          std::uint32_t n,
                                                          std::uint32_t k,
                                                          std::uint64_t seed) {
    if (S.examples.empty()) throw std::invalid_argument("empty sample");
    std::uint32_t l = restriction_size(n, k);
    std::mt19937_64 g(seed);
    auto kept = detail::sample_distinct(l, n, g);
    std::sort(kept.begin(), kept.end());
    auto [M, b] = sample_system(S, kept);
    auto sol = gf2_solve(M, b);
    if (!sol) return std::nullopt;
    ParityHypothesis hyp;
    hyp.trials_used = 1;
    for (std::uint32_t j = 0; j < l; ++j)
        if ((*sol)[j]) hyp.support.push_back(kept[j]);
    return hyp;
}

// Baseline: solve over all n columns; weight can reach min(m, n).
inline std::optional<ParityHypothesis> standard_parity_learner(const LabeledSample& S) {
    auto [M, b] = sample_system(S, all_columns(S.n));
    auto sol = gf2_solve(M, b);
    if (!sol) return std::nullopt;
    ParityHypothesis hyp;
    hyp.trials_used = 1;
    for (std::uint32_t j = 0; j < S.n; ++j)
        if ((*sol)[j]) hyp.support.push_back(j);
    return hyp;
}

using ExampleOracle = std::function<std::pair<BitVec, int>()>;

inline ExampleOracle make_parity_oracle(const ParityFunction& target, std::uint64_t seed) {
    auto g = std::make_shared<std::mt19937_64>(seed);
    ParityFunction t = target;
    return [g, t]() {
        BitVec x(t.n);
        for (auto& v : x) v = std::uint8_t((*g)() & 1);
        int label = t.eval(x);
        return std::make_pair(std::move(x), label);
    };
}

// Full sublinear-sample learner: draw m examples once, then re-randomize
// only the restriction until a trial succeeds. When l >= n/2 the standard
// all-columns solver already meets the bound and is used directly.
inline ParityHypothesis learn_parity(const ExampleOracle& oracle, std::uint32_t n,
                                     std::uint32_t k, double eps, double delta,
                                     std::uint64_t seed, std::uint64_t max_trials = 0) {
    if (max_trials == 0) max_trials = 100ull * n;
    std::uint32_t l = restriction_size(n, k);
    std::uint64_t m = occam_sample_size(n, k, eps, delta);
    LabeledSample S;
    S.n = n;
    for (std::uint64_t i = 0; i < m; ++i) S.examples.push_back(oracle());

    if (2ull * l >= n) {
        auto hyp = standard_parity_learner(S);
        if (!hyp)
            throw std::runtime_error("learn_parity: sample not realizable by any parity");
        return *hyp;
    }
    for (std::uint64_t t = 1; t <= max_trials; ++t) {
        if (auto hyp = learn_parity_trial(S, n, k, split_seed(seed, t))) {
            hyp->trials_used = t;
            return *hyp;
        }
    }
    throw std::runtime_error(
        "learn_parity: no consistent restriction after max_trials; "
        "either astronomically unlucky or the sample is not a size-k parity");
}

} // namespace ptflab
