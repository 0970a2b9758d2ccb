#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ptflab/boolean.hpp"

namespace ptflab {

using Int = mpz_class;
using Rat = mpq_class;

// Multilinear monomial: strictly increasing variable indices.
struct Monomial {
    std::vector<std::uint32_t> vars;

    Monomial() = default;
    explicit Monomial(std::vector<std::uint32_t> v) : vars(std::move(v)) {}

    std::size_t degree() const { return vars.size(); }

    // (degree, lex) order -- the canonical term ordering everywhere.
    bool operator<(const Monomial& o) const {
        if (vars.size() != o.vars.size()) return vars.size() < o.vars.size();
        return vars < o.vars;
    }
    bool operator==(const Monomial&) const = default;

    // Union with multilinear reduction (x^2 = x on {0,1}).
    Monomial merged(const Monomial& o) const {
        Monomial m;
        m.vars.reserve(vars.size() + o.vars.size());
        std::set_union(vars.begin(), vars.end(), o.vars.begin(), o.vars.end(),
                       std::back_inserter(m.vars));
        return m;
    }

    bool active(const BitVec& x) const {
        for (auto v : vars)
            if (!x[v]) return false;
        return true;
    }
};

template <class Coef>
struct Poly {
    std::uint32_t n = 0;                // ambient dimension
    std::map<Monomial, Coef> terms;     // no zero coefficients stored

    Poly() = default;
    explicit Poly(std::uint32_t n_) : n(n_) {}

    static Poly constant(std::uint32_t n, const Coef& c) {
        Poly p(n);
        if (c != 0) p.terms[Monomial{}] = c;
        return p;
    }
    static Poly variable(std::uint32_t n, std::uint32_t v) {
        Poly p(n);
        p.terms[Monomial{{v}}] = 1;
        return p;
    }

    std::size_t degree() const { // zero poly -> 0 by convention
        return terms.empty() ? 0 : terms.rbegin()->first.degree();
    }

    void add_term(const Monomial& m, const Coef& c) {
        auto it = terms.find(m);
        if (it == terms.end()) {
            if (c != 0) terms.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    Coef coeff(const Monomial& m) const {
        auto it = terms.find(m);
        return it == terms.end() ? Coef(0) : it->second;
    }

    Coef eval(const BitVec& x) const {
        check_dim(x.size(), n);
        Coef acc = 0;
        for (const auto& [m, c] : terms)
            if (m.active(x)) acc += c;
        return acc;
    }

    bool operator==(const Poly&) const = default;
};

using SparsePoly = Poly<Rat>; // exact rationals, always canonical
using IntPoly = Poly<Int>;

namespace detail {
template <class C>
void require_same_ambient(const Poly<C>& p, const Poly<C>& q) {
    if (p.n != q.n)
        throw std::invalid_argument("polynomial ambient dimension mismatch");
}
} // namespace detail

template <class C>
Poly<C> add(const Poly<C>& p, const Poly<C>& q) {
    detail::require_same_ambient(p, q);
    Poly<C> r = p;
    for (const auto& [m, c] : q.terms) r.add_term(m, c);
    return r;
}

template <class C>
Poly<C> sub(const Poly<C>& p, const Poly<C>& q) {
    detail::require_same_ambient(p, q);
    Poly<C> r = p;
    for (const auto& [m, c] : q.terms) r.add_term(m, C(-c));
    return r;
}

template <class C>
Poly<C> scale(const Poly<C>& p, const C& c) {
    Poly<C> r(p.n);
    if (c == 0) return r;
    for (const auto& [m, a] : p.terms) r.terms[m] = a * c;
    return r;
}

// Product with multilinear reduction applied term by term.
template <class C>
Poly<C> mul(const Poly<C>& p, const Poly<C>& q) {
    detail::require_same_ambient(p, q);
    Poly<C> r(p.n);
    for (const auto& [mp, cp] : p.terms)
        for (const auto& [mq, cq] : q.terms)
            r.add_term(mp.merged(mq), C(cp * cq));
    return r;
}

template <class C>
Poly<C> pow(const Poly<C>& p, unsigned e) {
    Poly<C> r = Poly<C>::constant(p.n, C(1));
    Poly<C> base = p;
    while (e) {
        if (e & 1) r = mul(r, base);
        e >>= 1;
        if (e) base = mul(base, base);
    }
    return r;
}

inline SparsePoly to_rational(const IntPoly& p) {
    SparsePoly r(p.n);
    for (const auto& [m, c] : p.terms) r.terms[m] = Rat(c);
    return r;
}

// --- univariate polynomials (dense coefficient vectors) ---

template <class Coef>
struct UniPoly {
    std::vector<Coef> coeffs; // coeffs[i] multiplies y^i; no trailing zeros

    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

    void trim() {
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }

    Coef eval(const Coef& y) const {
        Coef acc = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
            acc = acc * y + *it;
        return acc;
    }

    UniPoly<Coef> derivative() const {
        UniPoly<Coef> d;
        for (std::size_t i = 1; i < coeffs.size(); ++i)
            d.coeffs.push_back(coeffs[i] * Coef(long(i)));
        d.trim();
        return d;
    }
};

using UniIntPoly = UniPoly<Int>;
using UniRatPoly = UniPoly<Rat>;

// Chebyshev polynomial of the first kind, via the three-term recurrence.
inline UniIntPoly chebyshev(unsigned d) {
    UniIntPoly c0; c0.coeffs = {Int(1)};
    if (d == 0) return c0;
    UniIntPoly c1; c1.coeffs = {Int(0), Int(1)};
    for (unsigned i = 1; i < d; ++i) {
        UniIntPoly next;
        next.coeffs.assign(c1.coeffs.size() + 1, Int(0));
        for (std::size_t j = 0; j < c1.coeffs.size(); ++j)
            next.coeffs[j + 1] = 2 * c1.coeffs[j];
        for (std::size_t j = 0; j < c0.coeffs.size(); ++j)
            next.coeffs[j] -= c0.coeffs[j];
        c0 = std::move(c1);
        c1 = std::move(next);
    }
    return c1;
}

inline UniRatPoly to_rational(const UniIntPoly& q) {
    UniRatPoly r;
    for (const auto& c : q.coeffs) r.coeffs.push_back(Rat(c));
    return r;
}

// Substitute the affine image "q(a*y + b)" coefficient-wise.
inline UniRatPoly compose_affine(const UniRatPoly& q, const Rat& a, const Rat& b) {
    UniRatPoly arg; arg.coeffs = {b, a};
    arg.trim();
    UniRatPoly acc;
    for (auto it = q.coeffs.rbegin(); it != q.coeffs.rend(); ++it) {
        // acc = acc * arg + *it
        UniRatPoly next;
        if (!acc.coeffs.empty() && !arg.coeffs.empty()) {
            next.coeffs.assign(acc.coeffs.size() + arg.coeffs.size() - 1, Rat(0));
            for (std::size_t i = 0; i < acc.coeffs.size(); ++i)
                for (std::size_t j = 0; j < arg.coeffs.size(); ++j)
                    next.coeffs[i + j] += acc.coeffs[i] * arg.coeffs[j];
        }
        if (next.coeffs.empty()) next.coeffs.push_back(Rat(0));
        next.coeffs[0] += *it;
        next.trim();
        acc = std::move(next);
    }
    return acc;
}

// q(A(x)) by Horner over the multivariate argument (multilinear-reduced).
inline SparsePoly compose_univariate(const UniRatPoly& q, const SparsePoly& A) {
    SparsePoly acc(A.n);
    for (auto it = q.coeffs.rbegin(); it != q.coeffs.rend(); ++it) {
        acc = mul(acc, A);
        acc.add_term(Monomial{}, *it);
    }
    return acc;
}

// Clear denominators: C = lcm of coefficient denominators, p_tilde = C*p.
struct ClearedPoly {
    IntPoly poly;
    Int scale; // positive
};

inline ClearedPoly clear_denominators(const SparsePoly& p) {
    Int c = 1;
    for (const auto& [m, r] : p.terms)
        mpz_lcm(c.get_mpz_t(), c.get_mpz_t(), r.get_den_mpz_t());
    IntPoly out(p.n);
    for (const auto& [m, r] : p.terms) {
        Rat scaled = r * Rat(c);
        out.terms[m] = Int(scaled); // exact: denominator divides c
    }
    return {std::move(out), c};
}

// ell~ : x for a positive literal, 1-x for a negated one.
inline IntPoly literal_poly(const Literal& l, std::uint32_t n) {
    IntPoly p(n);
    if (l.negated) {
        p.terms[Monomial{}] = 1;
        p.terms[Monomial{{l.var}}] = -1;
    } else {
        p.terms[Monomial{{l.var}}] = 1;
    }
    return p;
}

// Expanded product of literal polys; 0/1-valued, degree <= r, weight <= 2^r.
inline IntPoly conjunction_interpolator(const Conjunction& c, std::uint32_t n) {
    std::vector<std::uint32_t> seen;
    for (const auto& l : c.lits) seen.push_back(l.var);
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw std::invalid_argument("conjunction repeats a variable");
    IntPoly p = IntPoly::constant(n, 1);
    for (const auto& l : c.lits) p = mul(p, literal_poly(l, n));
    return p;
}

inline Int weight(const IntPoly& p) {
    Int w = 0;
    for (const auto& [m, c] : p.terms) w += abs(c);
    return w;
}

inline std::size_t degree(const IntPoly& p) { return p.degree(); }
inline std::size_t degree(const SparsePoly& p) { return p.degree(); }

// One term per line, "+c * x_i * x_j" in (degree, lex) order, 1-based vars.
template <class C>
std::string to_text(const Poly<C>& p) {
    std::ostringstream os;
    for (const auto& [m, c] : p.terms) {
        os << (c < 0 ? "" : "+") << c;
        for (auto v : m.vars) os << " * x_" << (v + 1);
        os << "\n";
    }
    return os.str();
}

} // namespace ptflab
