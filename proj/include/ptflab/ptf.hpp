#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ptflab/boolean.hpp"
#include "ptflab/cube.hpp"
#include "ptflab/poly.hpp"
#include "ptflab/seed.hpp"

namespace ptflab {

// Default cap on exhaustive sweeps (2^22 ~ 4M inputs); the environment
// variable PTFLAB_EXHAUSTION_LIMIT overrides it.
inline unsigned exhaustion_limit() {
    if (const char* s = std::getenv("PTFLAB_EXHAUSTION_LIMIT")) {
        long v = std::atol(s);
        if (v >= 1 && v <= 28) return unsigned(v);
    }
    return 22;
}

inline int sgn(const Int& v) { return mpz_sgn(v.get_mpz_t()); }

struct PtfInfo {
    std::string construction;
    unsigned h = 0;
    unsigned cheb_degree = 0;
    unsigned exponent = 0;
    Int scale_c = 1;
    std::size_t degree = 0;
    Int weight = 0;
};

struct Ptf {
    IntPoly poly;
    PtfInfo info;
};

inline void measure(Ptf& p) {
    p.info.degree = degree(p.poly);
    p.info.weight = weight(p.poly);
}

// Telescoping exact representation of a modified decision list:
//   b_1*l~_1 + b_2*(1-l~_1)*l~_2 + ... ; degree <= h, weight <= 2^{h+1}.
inline IntPoly modified_dl_exact_poly(const ModifiedDecisionList& f) {
    IntPoly acc(f.n);
    IntPoly prefix = IntPoly::constant(f.n, 1); // prod (1 - l~_j), j < i
    for (const auto& [lit, b] : f.items) {
        IntPoly lp = literal_poly(lit, f.n);
        acc = add(acc, scale(mul(prefix, lp), Int(b)));
        prefix = mul(prefix, sub(IntPoly::constant(f.n, 1), lp));
    }
    return acc;
}

// Outer construction: sign( sum_i 2^{B-i+1} f_i(x) + b_{k+1} ) over
// B = ceil(k/h) blocks. Degree <= h, weight <= 4 * 2^{ceil(k/h)+h}.
inline Ptf outer_ptf(const DecisionList& L, unsigned h) {
    Ptf out;
    out.info.construction = "outer";
    out.info.h = h;
    if (L.items.empty()) {
        out.poly = IntPoly::constant(L.n, Int(L.default_label));
        measure(out);
        return out;
    }
    if (h < 1 || h > L.length())
        throw std::invalid_argument("outer_ptf: need 1 <= h <= k");
    auto split = split_blocks(L, h);
    const std::size_t B = split.blocks.size();
    IntPoly H(L.n);
    for (std::size_t i = 0; i < B; ++i) {
        Int c;
        mpz_ui_pow_ui(c.get_mpz_t(), 2, unsigned(B - i)); // 2^{B-(i+1)+1}
        H = add(H, scale(modified_dl_exact_poly(split.blocks[i]), c));
    }
    H.add_term(Monomial{}, Int(L.default_label));
    out.poly = std::move(H);
    measure(out);
    return out;
}

// The Chebyshev amplification gadget shared by all length-h inner blocks.
// q(y) = C_d(y*(1+1/h)) with d = ceil(sqrt(h)); the block polynomial uses
// P_i = (Q_i/q(1))^e with e = max(2, 2*ceil(log2 h)), an even integer.
struct InnerGadget {
    unsigned h;
    unsigned d;
    unsigned e;
    UniRatPoly q;
    Rat q_at_1;
    std::vector<Rat> p_table; // p_table[A] = (q(A/h)/q(1))^e for A = 0..h

    explicit InnerGadget(unsigned h_) : h(h_) {
        if (h < 2) throw std::invalid_argument("inner gadget needs h >= 2");
        d = unsigned(std::ceil(std::sqrt(double(h))));
        while (unsigned(d - 1) * unsigned(d - 1) >= h) --d; // guard fp edges
        while (unsigned(d) * unsigned(d) < h) ++d;
        unsigned lg = 0;
        while ((1u << lg) < h) ++lg; // ceil(log2 h)
        e = std::max(2u, 2 * lg);
        Rat stretch(h + 1, h);
        stretch.canonicalize();
        q = compose_affine(to_rational(chebyshev(d)), stretch, Rat(0));
        q_at_1 = q.eval(Rat(1));
        p_table.reserve(h + 1);
        for (unsigned A = 0; A <= h; ++A) {
            Rat t(A, h);
            t.canonicalize();
            Rat ratio = q.eval(t) / q_at_1;
            Rat pw = 1;
            for (unsigned j = 0; j < e; ++j) pw *= ratio;
            p_table.push_back(pw);
        }
    }

    // A_i over the positive-literal block coordinates, 1-based i.
    long arithmetized(unsigned i, std::uint64_t ymask) const {
        long zeros = 0;
        for (unsigned j = 0; j + 1 < i; ++j)
            if (!((ymask >> j) & 1)) ++zeros;
        return long(h) - long(i) + long((ymask >> (i - 1)) & 1) + zeros;
    }

    Rat p_value(unsigned i, std::uint64_t ymask) const {
        return p_table[std::size_t(arithmetized(i, ymask))];
    }
};

struct InnerApprox {
    IntPoly poly; // p~, integer coefficients, p~(0^h) = 0
    Int scale_c;  // |p~(x) - C f(x)| <= C/h on the block cube
    unsigned cheb_degree = 0;
    unsigned exponent = 0;
};

// Cor-2 approximator for one block. The construction runs over abstract
// positive-literal coordinates and substitutes x / 1-x per literal at the
// end, which in the value domain is an XOR shift of the cube.
inline InnerApprox inner_approx(const ModifiedDecisionList& f) {
    const unsigned h = unsigned(f.length());
    if (h < 2) throw std::invalid_argument("inner_approx: block length >= 2 required");
    std::vector<std::uint32_t> vars;
    std::uint64_t negmask = 0;
    for (unsigned i = 0; i < h; ++i) {
        vars.push_back(f.items[i].first.var);
        if (f.items[i].first.negated) negmask |= std::uint64_t(1) << i;
    }
    {
        auto sorted = vars;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("inner_approx: block repeats a variable");
    }

    InnerGadget g(h);
    const std::size_t size = std::size_t(1) << h;
    std::vector<Rat> vals(size, Rat(0)); // R on the abstract cube
    for (std::size_t ym = 0; ym < size; ++ym)
        for (unsigned i = 1; i <= h; ++i)
            vals[ym] += Rat(f.items[i - 1].second) * g.p_value(i, ym);
    const Rat r0 = vals[0];
    for (auto& v : vals) v -= r0; // p = R - R(0^h)

    // substitute literals: value at block input mx equals p at ymask = mx^negmask
    std::vector<Rat> xvals(size);
    for (std::size_t mx = 0; mx < size; ++mx) xvals[mx] = vals[mx ^ negmask];
    mobius_transform(xvals, h);

    auto cleared = clear_denominators(poly_from_dense_mapped(xvals, h, f.n, vars));
    return {std::move(cleared.poly), std::move(cleared.scale), g.d, g.e};
}

// Composed construction (base-3 outer sum over inner approximators):
//   H = sum_i 3^{B-i+1} p~_i + C b_{k+1}, all blocks rescaled to a common C.
inline Ptf compose_ptf(const DecisionList& L, unsigned h) {
    const std::size_t k = L.length();
    if (h < 2 || h > k)
        throw std::invalid_argument("compose_ptf: need 2 <= h <= k");
    auto split = split_blocks(L, h);
    const std::size_t B = split.blocks.size();

    std::vector<IntPoly> block_polys;
    std::vector<Int> block_scales;
    unsigned cheb_d = 0, expo = 0;
    for (const auto& f : split.blocks) {
        if (f.length() >= 2) {
            auto ia = inner_approx(f);
            block_polys.push_back(std::move(ia.poly));
            block_scales.push_back(std::move(ia.scale_c));
            cheb_d = ia.cheb_degree;
            expo = ia.exponent;
        } else {
            // short final block of length 1: the telescoping poly is already
            // exact, so it plays the p~ role with C = 1
            block_polys.push_back(modified_dl_exact_poly(f));
            block_scales.push_back(1);
        }
    }
    Int C = 1;
    for (const auto& c : block_scales)
        mpz_lcm(C.get_mpz_t(), C.get_mpz_t(), c.get_mpz_t());

    IntPoly H(L.n);
    for (std::size_t i = 0; i < B; ++i) {
        Int c3;
        mpz_ui_pow_ui(c3.get_mpz_t(), 3, unsigned(B - i)); // 3^{B-(i+1)+1}
        H = add(H, scale(block_polys[i], Int(c3 * (C / block_scales[i]))));
    }
    H.add_term(Monomial{}, Int(C * L.default_label));

    Ptf out;
    out.poly = std::move(H);
    out.info.construction = "compose";
    out.info.h = h;
    out.info.cheb_degree = cheb_d;
    out.info.exponent = expo;
    out.info.scale_c = std::move(C);
    measure(out);
    return out;
}

// h = max(2, round(k^{2/3} / (log2 k)^{4/3})), the balance point between the
// outer base-3 sum and the inner Chebyshev degree.
inline unsigned main_ptf_block_len(std::size_t k) {
    if (k < 2) throw std::invalid_argument("main_ptf: k >= 2 required");
    double v = std::pow(double(k), 2.0 / 3.0) /
               std::pow(std::log2(double(k)), 4.0 / 3.0);
    long r = std::lround(v);
    return unsigned(std::max(2l, r));
}

inline Ptf main_ptf(const DecisionList& L) {
    unsigned h = std::min<std::size_t>(main_ptf_block_len(L.length()), L.length());
    Ptf p = compose_ptf(L, h);
    p.info.construction = "main";
    return p;
}

// Degree the composed construction guarantees for block length h (the
// multilinear cap h vs. the raw Chebyshev-power degree d*e).
inline unsigned compose_degree_bound(unsigned h) {
    InnerGadget g(h);
    return std::min(h, g.d * g.e);
}

namespace detail {
inline IntPoly substitute_sparse(const IntPoly& H,
                                 const std::vector<IntPoly>& args,
                                 std::uint32_t n) {
    IntPoly out(n);
    for (const auto& [m, c] : H.terms) {
        IntPoly prod = IntPoly::constant(n, 1);
        for (auto v : m.vars) prod = mul(prod, args[v]);
        out = add(out, scale(prod, c));
    }
    return out;
}
} // namespace detail

// r-decision list construction: compose over abstract block variables, then
// substitute each conjunction's interpolating polynomial.
inline Ptf rdl_ptf(const RDecisionList& L, unsigned h) {
    const std::size_t k = L.length();
    if (h < 2 || h > k)
        throw std::invalid_argument("rdl_ptf: need 2 <= h <= k");

    DecisionList abstract;
    abstract.n = std::uint32_t(k);
    for (std::size_t i = 0; i < k; ++i)
        abstract.items.push_back({Literal{std::uint32_t(i), false}, L.items[i].second});
    abstract.default_label = L.default_label;
    Ptf composed = compose_ptf(abstract, h);

    std::vector<IntPoly> interp;
    for (const auto& [c, b] : L.items) {
        if (c.width() > L.r) throw std::invalid_argument("conjunction wider than r");
        interp.push_back(conjunction_interpolator(c, L.n));
    }

    IntPoly substituted(L.n);
    if (L.n <= exhaustion_limit() && k <= 22) {
        // value-domain substitution: H(y(x)) pointwise, then interpolate back
        auto hvals = values_on_cube(composed.poly, unsigned(k));
        std::vector<Int> xvals(std::size_t(1) << L.n);
        for (std::uint64_t mx = 0; mx < xvals.size(); ++mx) {
            auto x = mask_to_bits(mx, L.n);
            std::uint64_t ym = 0;
            for (std::size_t i = 0; i < k; ++i)
                if (L.items[i].first.eval(x)) ym |= std::uint64_t(1) << i;
            xvals[mx] = hvals[ym];
        }
        mobius_transform(xvals, L.n);
        substituted = poly_from_dense(xvals, L.n, L.n);
    } else {
        substituted = detail::substitute_sparse(composed.poly, interp, L.n);
    }

    Ptf out;
    out.poly = std::move(substituted);
    out.info = composed.info;
    out.info.construction = "rdl";
    measure(out);
    return out;
}

struct VerifyReport {
    unsigned n = 0; // domain is {0,1}^n
    std::uint64_t mismatches = 0;
    std::uint64_t sign_zero_hits = 0;
    std::optional<std::uint64_t> first_witness; // input mask
    std::size_t degree = 0;
    Int weight = 0;

    bool valid() const { return mismatches == 0; }
};

// Exhaustive sign check of a PTF against a concept given as mask -> {-1,+1}.
inline VerifyReport verify_ptf_exhaustive(const Ptf& p,
                                          const std::function<int(std::uint64_t)>& concept_fn,
                                          unsigned n,
                                          unsigned limit = 0) {
    if (limit == 0) limit = exhaustion_limit();
    if (n > limit)
        throw std::invalid_argument("verify_ptf_exhaustive: n over exhaustion limit");
    VerifyReport rep;
    rep.n = n;
    rep.degree = degree(p.poly);
    rep.weight = weight(p.poly);
    auto vals = values_on_cube(p.poly, n);
    for (std::uint64_t m = 0; m < vals.size(); ++m) {
        int s = sgn(vals[m]);
        if (s == 0) ++rep.sign_zero_hits;
        if (s != concept_fn(m)) {
            ++rep.mismatches;
            if (!rep.first_witness) rep.first_witness = m;
        }
    }
    return rep;
}

struct TradeoffRow {
    std::size_t k = 0;
    unsigned h = 0;
    std::size_t degree = 0;
    double log2_weight = 0;       // from the actual IntPoly, ~1e-6 precision
    double bound_log2_weight = 0; // ceil(k/h) + sqrt(h)*log2(h)^2
    bool verified = false;
};

inline double log2_of(const Int& w) {
    if (w == 0) return 0;
    long exp2;
    double d = mpz_get_d_2exp(&exp2, w.get_mpz_t());
    return std::log2(std::abs(d)) + double(exp2);
}

enum class ConceptFamily { oddmaxbit, random };

inline std::vector<TradeoffRow> tradeoff_profile(ConceptFamily family,
                                                 const std::vector<std::size_t>& ks,
                                                 const std::vector<unsigned>& hs,
                                                 std::uint64_t seed = 0,
                                                 bool verify = true) {
    std::vector<TradeoffRow> rows;
    std::uint64_t counter = 0;
    for (auto k : ks) {
        DecisionList L = (family == ConceptFamily::oddmaxbit)
                             ? oddmaxbit(std::uint32_t(k))
                             : random_decision_list(std::uint32_t(k), std::uint32_t(k),
                                                    split_seed(seed, counter++));
        for (auto h : hs) {
            if (h < 2 || h > k) continue;
            Ptf p = compose_ptf(L, h);
            TradeoffRow row;
            row.k = k;
            row.h = h;
            row.degree = p.info.degree;
            row.log2_weight = log2_of(p.info.weight);
            double ceil_kh = double((k + h - 1) / h);
            double lg = std::log2(double(h));
            row.bound_log2_weight = ceil_kh + std::sqrt(double(h)) * lg * lg;
            if (verify && k <= exhaustion_limit()) {
                auto rep = verify_ptf_exhaustive(
                    p, [&](std::uint64_t m) { return L.eval(mask_to_bits(m, L.n)); },
                    L.n);
                row.verified = rep.valid();
            }
            rows.push_back(row);
        }
    }
    return rows;
}

} // namespace ptflab
