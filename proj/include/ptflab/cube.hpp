#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ptflab/poly.hpp"

namespace ptflab {

// Dense multilinear representation over the Boolean cube. Index bit i of a
// mask corresponds to variable i. value(x) = sum over subsets S of x of
// coeff(S), so coefficient <-> value conversion is the subset-sum (zeta)
// transform and its inverse, O(2^n * n) ring ops.

// In place, coefficients -> values on all 2^n inputs.
template <class C>
void zeta_transform(std::vector<C>& a, unsigned nvars) {
    const std::size_t size = std::size_t(1) << nvars;
    if (a.size() != size) throw std::invalid_argument("zeta: size mismatch");
    for (unsigned i = 0; i < nvars; ++i) {
        const std::size_t bit = std::size_t(1) << i;
        for (std::size_t m = 0; m < size; ++m)
            if (m & bit) a[m] += a[m ^ bit];
    }
}

// Inverse: values -> multilinear coefficients.
template <class C>
void mobius_transform(std::vector<C>& a, unsigned nvars) {
    const std::size_t size = std::size_t(1) << nvars;
    if (a.size() != size) throw std::invalid_argument("mobius: size mismatch");
    for (unsigned i = 0; i < nvars; ++i) {
        const std::size_t bit = std::size_t(1) << i;
        for (std::size_t m = 0; m < size; ++m)
            if (m & bit) a[m] -= a[m ^ bit];
    }
}

template <class C>
std::vector<C> dense_coeffs(const Poly<C>& p, unsigned nvars) {
    if (nvars > 28) throw std::invalid_argument("dense cube too large");
    std::vector<C> a(std::size_t(1) << nvars, C(0));
    for (const auto& [m, c] : p.terms) {
        std::size_t mask = 0;
        for (auto v : m.vars) {
            if (v >= nvars) throw std::invalid_argument("variable outside cube");
            mask |= std::size_t(1) << v;
        }
        a[mask] = c;
    }
    return a;
}

// Exact values of p on every x in {0,1}^nvars, indexed by input mask.
template <class C>
std::vector<C> values_on_cube(const Poly<C>& p, unsigned nvars) {
    auto a = dense_coeffs(p, nvars);
    zeta_transform(a, nvars);
    return a;
}

template <class C>
Poly<C> poly_from_dense(const std::vector<C>& coeffs, unsigned nvars,
                        std::uint32_t ambient_n) {
    Poly<C> p(ambient_n);
    for (std::size_t mask = 0; mask < coeffs.size(); ++mask) {
        if (coeffs[mask] == 0) continue;
        Monomial m;
        for (unsigned v = 0; v < nvars; ++v)
            if (mask & (std::size_t(1) << v)) m.vars.push_back(v);
        p.terms.emplace(std::move(m), coeffs[mask]);
    }
    return p;
}

// Rename cube coordinate i to var_map[i] (strictly for sparse rebuilds where
// the dense cube was built over block-local coordinates).
template <class C>
Poly<C> poly_from_dense_mapped(const std::vector<C>& coeffs, unsigned nvars,
                               std::uint32_t ambient_n,
                               const std::vector<std::uint32_t>& var_map) {
    Poly<C> p(ambient_n);
    for (std::size_t mask = 0; mask < coeffs.size(); ++mask) {
        if (coeffs[mask] == 0) continue;
        Monomial m;
        for (unsigned v = 0; v < nvars; ++v)
            if (mask & (std::size_t(1) << v)) m.vars.push_back(var_map[v]);
        std::sort(m.vars.begin(), m.vars.end());
        p.add_term(m, coeffs[mask]);
    }
    return p;
}

} // namespace ptflab
