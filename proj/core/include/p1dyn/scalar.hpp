#pragma once

#include <complex>
#include <type_traits>

#include "p1dyn/cball.hpp"
#include "p1dyn/cyclo.hpp"
#include "p1dyn/rational.hpp"
#include "p1dyn/scalar_fwd.hpp"

namespace p1dyn {

template <>
struct scalar_traits<std::complex<double>> {
    static constexpr bool is_exact = false;
    static std::complex<double> zero() { return {0.0, 0.0}; }
    static std::complex<double> one() { return {1.0, 0.0}; }
    static bool is_zero(const std::complex<double>& x) { return x == std::complex<double>(0.0, 0.0); }
    static std::complex<double> from_int(long v) { return {static_cast<double>(v), 0.0}; }
    static std::complex<double> from_rational(const Rational& q) { return {q.get_d(), 0.0}; }
    static std::complex<double> to_complex(const std::complex<double>& x) { return x; }
};

template <class K>
constexpr Domain domain_of() {
    if constexpr (std::is_same_v<K, Rational>)
        return Domain::rational;
    else if constexpr (std::is_same_v<K, Cyclo>)
        return Domain::cyclotomic;
    else
        return Domain::complex;
}

// Dual numbers K[eps]/(eps^2): exact directional derivatives ride along
// ordinary composition. Division is defined when the value part is a unit.
template <class K>
struct Dual {
    K value = scalar_traits<K>::zero();
    K deriv = scalar_traits<K>::zero();

    Dual() = default;
    Dual(K v) : value(std::move(v)) {}
    Dual(K v, K d) : value(std::move(v)), deriv(std::move(d)) {}

    Dual operator-() const { return Dual(-value, -deriv); }

    friend Dual operator+(const Dual& a, const Dual& b) { return Dual(a.value + b.value, a.deriv + b.deriv); }
    friend Dual operator-(const Dual& a, const Dual& b) { return Dual(a.value - b.value, a.deriv - b.deriv); }
    friend Dual operator*(const Dual& a, const Dual& b) {
        return Dual(a.value * b.value, a.value * b.deriv + a.deriv * b.value);
    }
    friend Dual operator/(const Dual& a, const Dual& b) {
        K inv = scalar_traits<K>::one() / b.value;
        K v = a.value * inv;
        return Dual(v, (a.deriv - v * b.deriv) * inv);
    }

    bool operator==(const Dual& o) const {
        return scalar_traits<K>::is_zero(value - o.value) && scalar_traits<K>::is_zero(deriv - o.deriv);
    }
};

template <class K>
struct scalar_traits<Dual<K>> {
    static constexpr bool is_exact = scalar_traits<K>::is_exact;
    static Dual<K> zero() { return Dual<K>(); }
    static Dual<K> one() { return Dual<K>(scalar_traits<K>::one()); }
    static bool is_zero(const Dual<K>& x) {
        return scalar_traits<K>::is_zero(x.value) && scalar_traits<K>::is_zero(x.deriv);
    }
    static Dual<K> from_int(long v) { return Dual<K>(scalar_traits<K>::from_int(v)); }
    static Dual<K> from_rational(const Rational& q) { return Dual<K>(scalar_traits<K>::from_rational(q)); }
    static std::complex<double> to_complex(const Dual<K>& x) { return scalar_traits<K>::to_complex(x.value); }
};

}  // namespace p1dyn
