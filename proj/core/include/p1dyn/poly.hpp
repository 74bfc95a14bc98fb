#pragma once

#include <algorithm>
#include <complex>
#include <utility>
#include <vector>

#include "p1dyn/errors.hpp"
#include "p1dyn/matrix.hpp"
#include "p1dyn/rational.hpp"
#include "p1dyn/scalar_fwd.hpp"

namespace p1dyn {

// Univariate polynomial with ascending coefficients over a scalar domain.
// Trailing zeros are trimmed; the zero polynomial has an empty sequence and
// degree -1.
template <class K>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
    explicit Poly(K constant) : c_{std::move(constant)} { trim(); }

    static Poly monomial(int deg, K coeff = scalar_traits<K>::one()) {
        std::vector<K> c(static_cast<std::size_t>(deg) + 1, scalar_traits<K>::zero());
        c.back() = std::move(coeff);
        return Poly(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<K>& coeffs() const { return c_; }

    K coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return scalar_traits<K>::zero();
        return c_[static_cast<std::size_t>(i)];
    }

    const K& lead() const { return c_.back(); }

    template <class T>
    T eval(const T& x) const {
        if (c_.empty()) return T{};
        T acc{};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + T(*it);
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly{};
        std::vector<K> d(c_.size() - 1);
        K factor = scalar_traits<K>::zero();
        for (std::size_t i = 1; i < c_.size(); ++i) {
            factor = factor + scalar_traits<K>::one();
            d[i - 1] = c_[i] * factor;
        }
        return Poly(std::move(d));
    }

    Poly operator-() const {
        std::vector<K> r(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
        return Poly(std::move(r));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<K> r(std::max(a.c_.size(), b.c_.size()), scalar_traits<K>::zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
        return Poly(std::move(r));
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<K> r(std::max(a.c_.size(), b.c_.size()), scalar_traits<K>::zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] - b.c_[i];
        return Poly(std::move(r));
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly{};
        std::vector<K> r(a.c_.size() + b.c_.size() - 1, scalar_traits<K>::zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }

    friend Poly operator*(const K& s, const Poly& p) {
        std::vector<K> r(p.c_.size());
        for (std::size_t i = 0; i < p.c_.size(); ++i) r[i] = s * p.c_[i];
        return Poly(std::move(r));
    }

    bool operator==(const Poly& o) const {
        if (c_.size() != o.c_.size()) return false;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!scalar_traits<K>::is_zero(c_[i] - o.c_[i])) return false;
        return true;
    }

private:
    void trim() {
        while (!c_.empty() && scalar_traits<K>::is_zero(c_.back())) c_.pop_back();
    }

    std::vector<K> c_;
};

// Quotient and remainder; coefficient divisions must be exact in the scalar
// domain (a field, or the polynomial ring where operator/ checks exactness).
template <class K>
std::pair<Poly<K>, Poly<K>> divrem(const Poly<K>& num, const Poly<K>& den) {
    if (den.is_zero()) throw ZeroPolynomial("polynomial division by zero");
    std::vector<K> r(num.coeffs());
    const int dd = den.degree();
    const int dn = num.degree();
    if (dn < dd) return {Poly<K>{}, num};
    std::vector<K> q(static_cast<std::size_t>(dn - dd) + 1, scalar_traits<K>::zero());
    for (int k = dn - dd; k >= 0; --k) {
        const K& top = r[static_cast<std::size_t>(k + dd)];
        if (scalar_traits<K>::is_zero(top)) continue;
        K c = top / den.lead();
        q[static_cast<std::size_t>(k)] = c;
        for (int j = 0; j <= dd; ++j)
            r[static_cast<std::size_t>(k + j)] = r[static_cast<std::size_t>(k + j)] - c * den.coeff(j);
    }
    return {Poly<K>(std::move(q)), Poly<K>(std::move(r))};
}

// Exact division; throws NonExactDivision when the remainder is nonzero.
template <class K>
Poly<K> div_exact(const Poly<K>& num, const Poly<K>& den) {
    auto [q, r] = divrem(num, den);
    if (!r.is_zero()) throw NonExactDivision("polynomial division left a remainder");
    return q;
}

// p(q): polynomial substitution by Horner over the polynomial ring.
template <class K>
Poly<K> substitute(const Poly<K>& p, const Poly<K>& q) {
    Poly<K> acc;
    for (int i = p.degree(); i >= 0; --i) acc = acc * q + Poly<K>(p.coeff(i));
    return acc;
}

// Content/primitive decomposition over Q: p = content * primitive with the
// primitive part having coprime integer coefficients and positive lead.
inline std::pair<Rational, std::vector<mpz_class>> primitive_parts(const Poly<Rational>& p) {
    if (p.is_zero()) return {Rational(0), {}};
    mpz_class den_lcm = 1;
    for (const auto& c : p.coeffs())
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    std::vector<mpz_class> ints;
    ints.reserve(p.coeffs().size());
    mpz_class num_gcd = 0;
    for (const auto& c : p.coeffs()) {
        mpz_class v = c.get_num() * (den_lcm / c.get_den());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), v.get_mpz_t());
        ints.push_back(std::move(v));
    }
    if (sgn(ints.back()) < 0) num_gcd = -num_gcd;
    for (auto& v : ints) v /= num_gcd;
    Rational content(num_gcd, den_lcm);
    content.canonicalize();
    return {content, std::move(ints)};
}

inline Poly<Rational> primitive_part(const Poly<Rational>& p) {
    auto [content, ints] = primitive_parts(p);
    (void)content;
    std::vector<Rational> c;
    c.reserve(ints.size());
    for (auto& v : ints) c.emplace_back(v);
    return Poly<Rational>(std::move(c));
}

namespace detail {

// Primitive pseudo-remainder sequence; keeps integer coefficients small
// enough for the desk-scale degrees we hit.
inline std::vector<mpz_class> int_primitive(std::vector<mpz_class> v) {
    mpz_class g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 0) return v;
    if (sgn(v.back()) < 0) g = -g;
    for (auto& x : v) x /= g;
    return v;
}

inline std::vector<mpz_class> int_prem(std::vector<mpz_class> a, const std::vector<mpz_class>& b) {
    const int db = static_cast<int>(b.size()) - 1;
    while (static_cast<int>(a.size()) - 1 >= db) {
        const int da = static_cast<int>(a.size()) - 1;
        const mpz_class lead_a = a.back();
        // a <- lead(b) * a - lead(a) * x^{da-db} * b; the top term cancels.
        for (auto& x : a) x *= b.back();
        for (int j = 0; j <= db; ++j)
            a[static_cast<std::size_t>(da - db + j)] -= lead_a * b[static_cast<std::size_t>(j)];
        while (!a.empty() && a.back() == 0) a.pop_back();
        if (a.empty()) break;
    }
    return a;
}

}  // namespace detail

// Polynomial gcd. Over Q a primitive PRS on integer images is used; other
// exact domains run monic Euclid. The result is monic (or primitive over Q).
template <class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
    if constexpr (std::is_same_v<K, Rational>) {
        if (a.is_zero()) return b.is_zero() ? b : Rational(1) / b.lead() * b;
        if (b.is_zero()) return Rational(1) / a.lead() * a;
        auto va = primitive_parts(a).second;
        auto vb = primitive_parts(b).second;
        if (va.size() < vb.size()) std::swap(va, vb);
        while (!vb.empty()) {
            auto r = detail::int_primitive(detail::int_prem(va, vb));
            va = std::move(vb);
            vb = std::move(r);
        }
        std::vector<Rational> c;
        c.reserve(va.size());
        for (auto& v : va) c.emplace_back(v);
        Poly<Rational> g(std::move(c));
        return Rational(1) / g.lead() * g;
    } else {
        while (!b.is_zero()) {
            auto r = divrem(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        if (a.is_zero()) return a;
        K inv = scalar_traits<K>::one() / a.lead();
        return inv * a;
    }
}

// Yun's square-free decomposition: returns factors f_k with p = lead * prod
// f_k^k and each f_k square-free (index 0 of the vector is k = 1).
template <class K>
std::vector<Poly<K>> squarefree_decomposition(const Poly<K>& p) {
    static_assert(scalar_traits<K>::is_exact);
    if (p.degree() <= 0) return {};
    Poly<K> dp = p.derivative();
    Poly<K> g = poly_gcd(p, dp);
    std::vector<Poly<K>> out;
    if (g.degree() == 0) {
        out.push_back((scalar_traits<K>::one() / p.lead()) * p);
        return out;
    }
    Poly<K> w = div_exact(p, g);
    Poly<K> y = div_exact(dp, g);
    Poly<K> z = y - w.derivative();
    while (!w.is_zero() && w.degree() > 0) {
        Poly<K> f = poly_gcd(w, z);
        out.push_back(f);
        w = div_exact(w, f);
        z = div_exact(z, f) - w.derivative();
    }
    return out;
}

// Sylvester-matrix resultant at the declared degrees (deg_p, deg_q); pass -1
// to use the actual degrees. Declared degrees matter for the homogeneous
// nondegeneracy test where trailing zero coefficients are meaningful.
template <class K>
K resultant(const Poly<K>& p, const Poly<K>& q, int deg_p = -1, int deg_q = -1) {
    const int m = deg_p < 0 ? p.degree() : deg_p;
    const int n = deg_q < 0 ? q.degree() : deg_q;
    if (m < 0 || n < 0) throw ZeroPolynomial("resultant of the zero polynomial");
    if (m == 0 && n == 0) return scalar_traits<K>::one();
    if (m == 0) {
        K r = scalar_traits<K>::one();
        for (int i = 0; i < n; ++i) r = r * p.coeff(0);
        return r;
    }
    if (n == 0) {
        K r = scalar_traits<K>::one();
        for (int i = 0; i < m; ++i) r = r * q.coeff(0);
        return r;
    }
    Matrix<K> s(static_cast<std::size_t>(m + n), static_cast<std::size_t>(m + n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s(static_cast<std::size_t>(i), static_cast<std::size_t>(i + j)) = p.coeff(m - j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j)
            s(static_cast<std::size_t>(n + i), static_cast<std::size_t>(i + j)) = q.coeff(n - j);
    return det_bareiss(s);
}

template <class K>
Poly<std::complex<double>> to_complex_poly(const Poly<K>& p) {
    std::vector<std::complex<double>> c;
    c.reserve(p.coeffs().size());
    for (const auto& x : p.coeffs()) c.push_back(scalar_traits<K>::to_complex(x));
    return Poly<std::complex<double>>(std::move(c));
}

// Polynomials over an exact domain form an exact scalar for nesting
// (bivariate polynomials are Poly<Poly<K>> in (inner, outer) order).
template <class K>
struct scalar_traits<Poly<K>> {
    static constexpr bool is_exact = scalar_traits<K>::is_exact;
    static Poly<K> zero() { return Poly<K>{}; }
    static Poly<K> one() { return Poly<K>(scalar_traits<K>::one()); }
    static bool is_zero(const Poly<K>& p) { return p.is_zero(); }
    static Poly<K> from_int(long v) { return Poly<K>(scalar_traits<K>::from_int(v)); }
    static Poly<K> from_rational(const Rational& q) { return Poly<K>(scalar_traits<K>::from_rational(q)); }
    static std::complex<double> to_complex(const Poly<K>& p) {
        if (p.degree() > 0) throw DomainMismatch("non-constant polynomial used as a scalar");
        return scalar_traits<K>::to_complex(p.coeff(0));
    }
};

// Exact-division operator for nested polynomial scalars.
template <class K>
Poly<K> operator/(const Poly<K>& num, const Poly<K>& den) {
    return div_exact(num, den);
}

}  // namespace p1dyn
