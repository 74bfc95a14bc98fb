#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <functional>
#include <string>

#include "p1dyn/errors.hpp"
#include "p1dyn/scalar_fwd.hpp"

namespace p1dyn {

// Exact rational scalar. mpq_class keeps values canonical (reduced,
// positive denominator), so equality and hashing are plain value tests.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Parses "p/q" or "p" (optionally signed). Throws DomainMismatch on junk.
inline Rational parse_rational(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0)
        throw DomainMismatch("not a rational literal: '" + text + "'");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

inline std::size_t hash_mpz(const mpz_class& z) {
    const mpz_srcptr p = z.get_mpz_t();
    std::size_t h = static_cast<std::size_t>(p->_mp_size);
    const mp_limb_t* limbs = mpz_limbs_read(p);
    const int n = std::abs(p->_mp_size);
    for (int i = 0; i < n; ++i)
        h = h * 1099511628211ULL ^ static_cast<std::size_t>(limbs[i]);
    return h;
}

inline std::size_t hash_rational(const Rational& q) {
    return hash_mpz(q.get_num()) * 31 + hash_mpz(q.get_den());
}

// |q| > 1, decided exactly.
inline bool abs_greater_one(const Rational& q) {
    return cmp(abs(q), 1) > 0;
}

template <>
struct scalar_traits<Rational> {
    static constexpr bool is_exact = true;
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static bool is_zero(const Rational& q) { return sgn(q) == 0; }
    static Rational from_int(long v) { return Rational(v); }
    static Rational from_rational(const Rational& q) { return q; }
    static std::complex<double> to_complex(const Rational& q) { return {q.get_d(), 0.0}; }
};

}  // namespace p1dyn

template <>
struct std::hash<p1dyn::Rational> {
    std::size_t operator()(const p1dyn::Rational& q) const { return p1dyn::hash_rational(q); }
};
