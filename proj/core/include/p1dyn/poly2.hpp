#pragma once

#include <vector>

#include "p1dyn/errors.hpp"
#include "p1dyn/poly.hpp"

namespace p1dyn {

// Bivariate polynomials in (c, z): outer variable z, inner variable c, so a
// Poly2 is a polynomial in z whose coefficients live in K[c]. This is the
// shape the cycle-polynomial machinery wants (monic in z, divisions in z).
template <class K>
using Poly2 = Poly<Poly<K>>;

template <class K>
Poly2<K> poly2_z() {
    return Poly2<K>(std::vector<Poly<K>>{Poly<K>{}, Poly<K>(scalar_traits<K>::one())});
}

template <class K>
Poly2<K> poly2_c() {
    return Poly2<K>(Poly<K>(std::vector<K>{scalar_traits<K>::zero(), scalar_traits<K>::one()}));
}

template <class K>
Poly2<K> poly2_const(K v) {
    return Poly2<K>(Poly<K>(std::move(v)));
}

template <class K>
Poly<K> specialize_c(const Poly2<K>& p, const K& c0) {
    std::vector<K> out;
    out.reserve(static_cast<std::size_t>(p.degree()) + 1);
    for (int i = 0; i <= p.degree(); ++i) out.push_back(p.coeff(i).eval(c0));
    return Poly<K>(std::move(out));
}

template <class K>
K eval_cz(const Poly2<K>& p, const K& c0, const K& z0) {
    return specialize_c(p, c0).eval(z0);
}

template <class K>
Poly2<K> partial_z(const Poly2<K>& p) {
    return p.derivative();
}

template <class K>
Poly2<K> partial_c(const Poly2<K>& p) {
    std::vector<Poly<K>> out;
    out.reserve(static_cast<std::size_t>(p.degree()) + 1);
    for (int i = 0; i <= p.degree(); ++i) out.push_back(p.coeff(i).derivative());
    return Poly2<K>(std::move(out));
}

// Derivative of the local solution z(c) of P(c, z) = 0 at (c0, z0):
// -(dP/dc)/(dP/dz). The point must lie on the curve (exactly, in exact
// domains; within tol otherwise) and dP/dz must not vanish there.
template <class K>
K implicit_derivative(const Poly2<K>& p, const K& c0, const K& z0, double tol = 1e-9) {
    const K residual = eval_cz(p, c0, z0);
    if constexpr (scalar_traits<K>::is_exact) {
        if (!scalar_traits<K>::is_zero(residual)) throw NotOnCurve("P(c0, z0) != 0");
    } else {
        if (std::abs(scalar_traits<K>::to_complex(residual)) > tol) throw NotOnCurve("|P(c0, z0)| exceeds tol");
    }
    const K dz = eval_cz(partial_z(p), c0, z0);
    bool singular;
    if constexpr (std::is_same_v<K, CBall>)
        singular = !dz.definitely_nonzero();
    else if constexpr (scalar_traits<K>::is_exact)
        singular = scalar_traits<K>::is_zero(dz);
    else
        singular = std::abs(scalar_traits<K>::to_complex(dz)) <= tol * tol;
    if (singular) throw SingularPoint("dP/dz vanishes at (c0, z0)");
    const K dc = eval_cz(partial_c(p), c0, z0);
    return -(dc / dz);
}

}  // namespace p1dyn
