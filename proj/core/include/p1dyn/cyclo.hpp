#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "p1dyn/errors.hpp"
#include "p1dyn/poly.hpp"
#include "p1dyn/rational.hpp"

namespace p1dyn {

inline int euler_phi(int n) {
    int result = n, m = n;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

// n-th cyclotomic polynomial, computed as (x^n - 1) / prod of the proper
// divisors' cyclotomic polynomials. Integer coefficients.
inline Poly<Rational> cyclotomic_polynomial(int n) {
    if (n < 1) throw DomainMismatch("cyclotomic order must be >= 1");
    std::vector<Rational> xn(static_cast<std::size_t>(n) + 1, Rational(0));
    xn[0] = Rational(-1);
    xn.back() = Rational(1);
    Poly<Rational> num{std::move(xn)};
    for (int d = 1; d < n; ++d)
        if (n % d == 0) num = div_exact(num, cyclotomic_polynomial(d));
    return num;
}

namespace detail {

struct CycloTable {
    int order = 1;
    int phi = 1;
    Poly<Rational> min_poly;
    // x^k reduced mod Phi_n for k = phi .. max(2*phi-2, order-1); products
    // need 2*phi-2, bare powers of zeta need order-1.
    std::vector<std::vector<Rational>> high_powers;
};

inline const CycloTable& cyclo_table(int order) {
    static std::map<int, CycloTable> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;
    CycloTable t;
    t.order = order;
    t.min_poly = cyclotomic_polynomial(order);
    t.phi = t.min_poly.degree();
    std::vector<Rational> cur(static_cast<std::size_t>(t.phi), Rational(0));
    // x^phi = -(lower part of Phi), then multiply by x and re-reduce.
    for (int i = 0; i < t.phi; ++i) cur[static_cast<std::size_t>(i)] = -t.min_poly.coeff(i);
    const int top_power = std::max(2 * t.phi - 2, order - 1);
    for (int k = t.phi; k <= top_power; ++k) {
        t.high_powers.push_back(cur);
        std::vector<Rational> next(static_cast<std::size_t>(t.phi), Rational(0));
        for (int i = 0; i + 1 < t.phi; ++i) next[static_cast<std::size_t>(i + 1)] = cur[static_cast<std::size_t>(i)];
        const Rational top = cur[static_cast<std::size_t>(t.phi - 1)];
        if (sgn(top) != 0)
            for (int i = 0; i < t.phi; ++i)
                next[static_cast<std::size_t>(i)] -= top * t.min_poly.coeff(i);
        cur = std::move(next);
    }
    return cache.emplace(order, std::move(t)).first->second;
}

}  // namespace detail

// An element of Q(zeta_n), stored as a coordinate vector of length phi(n) in
// the power basis 1, zeta, ..., zeta^{phi(n)-1}, reduced modulo the n-th
// cyclotomic polynomial (so zeta is primitive by construction). Values that
// happen to be rational are canonicalized to order 1, which keeps equality
// and hashing consistent when rationals mix with field elements.
class Cyclo {
public:
    Cyclo() : order_(1), c_{Rational(0)} {}
    Cyclo(const Rational& value) : order_(1), c_{value} {}

    Cyclo(int order, std::vector<Rational> coords) : order_(order) {
        const auto& t = detail::cyclo_table(order);
        c_.assign(static_cast<std::size_t>(t.phi), Rational(0));
        for (std::size_t k = 0; k < coords.size(); ++k) add_power(t, static_cast<int>(k), coords[k]);
        canonicalize();
    }

    static Cyclo zeta(int order) {
        if (order == 1) return Cyclo(Rational(1));
        std::vector<Rational> v{Rational(0), Rational(1)};
        v.resize(2);
        return Cyclo(order, std::move(v));
    }

    int order() const { return order_; }
    const std::vector<Rational>& coords() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (sgn(x) != 0) return false;
        return true;
    }

    bool is_rational() const { return order_ == 1; }

    Rational rational_value() const {
        if (order_ != 1) throw DomainMismatch("cyclotomic element is not rational");
        return c_[0];
    }

    friend Cyclo operator+(const Cyclo& a, const Cyclo& b) {
        auto [x, y] = promote(a, b);
        for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
        x.canonicalize();
        return x;
    }

    friend Cyclo operator-(const Cyclo& a, const Cyclo& b) {
        auto [x, y] = promote(a, b);
        for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
        x.canonicalize();
        return x;
    }

    Cyclo operator-() const {
        Cyclo r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
        auto [x, y] = promote(a, b);
        if (x.order_ == 1) {
            x.c_[0] *= y.c_[0];
            return x;
        }
        const auto& t = detail::cyclo_table(x.order_);
        const int phi = t.phi;
        std::vector<Rational> conv(static_cast<std::size_t>(2 * phi - 1), Rational(0));
        for (int i = 0; i < phi; ++i) {
            if (sgn(x.c_[static_cast<std::size_t>(i)]) == 0) continue;
            for (int j = 0; j < phi; ++j)
                conv[static_cast<std::size_t>(i + j)] +=
                    x.c_[static_cast<std::size_t>(i)] * y.c_[static_cast<std::size_t>(j)];
        }
        Cyclo r;
        r.order_ = x.order_;
        r.c_.assign(static_cast<std::size_t>(phi), Rational(0));
        for (int k = 0; k < phi; ++k) r.c_[static_cast<std::size_t>(k)] = conv[static_cast<std::size_t>(k)];
        for (int k = phi; k <= 2 * phi - 2; ++k) {
            const Rational& coef = conv[static_cast<std::size_t>(k)];
            if (sgn(coef) == 0) continue;
            const auto& row = t.high_powers[static_cast<std::size_t>(k - phi)];
            for (int i = 0; i < phi; ++i) r.c_[static_cast<std::size_t>(i)] += coef * row[static_cast<std::size_t>(i)];
        }
        r.canonicalize();
        return r;
    }

    Cyclo inverse() const {
        if (is_zero()) throw DomainMismatch("division by zero in cyclotomic field");
        if (order_ == 1) return Cyclo(Rational(1) / c_[0]);
        // Extended Euclid in Q[x] against the minimal polynomial.
        const auto& t = detail::cyclo_table(order_);
        Poly<Rational> r0 = t.min_poly, r1 = as_poly();
        Poly<Rational> s0{}, s1{Rational(1)};
        while (!r1.is_zero() && r1.degree() > 0) {
            auto [q, r2] = divrem(r0, r1);
            Poly<Rational> s2 = s0 - q * s1;
            r0 = std::move(r1);
            r1 = std::move(r2);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        if (r1.is_zero()) throw DomainMismatch("non-invertible cyclotomic element");
        Poly<Rational> inv = (Rational(1) / r1.coeff(0)) * s1;
        return Cyclo(order_, inv.coeffs());
    }

    friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }

    Cyclo pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        Cyclo base = *this, acc = Cyclo(Rational(1));
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    // Complex conjugation: zeta^k -> zeta^{order-k}.
    Cyclo conj() const {
        if (order_ == 1) return *this;
        const auto& t = detail::cyclo_table(order_);
        Cyclo r;
        r.order_ = order_;
        r.c_.assign(static_cast<std::size_t>(t.phi), Rational(0));
        for (std::size_t i = 0; i < c_.size(); ++i)
            r.add_power(t, (order_ - static_cast<int>(i)) % order_, c_[i]);
        r.canonicalize();
        return r;
    }

    std::complex<double> to_complex() const {
        std::complex<double> acc(0.0, 0.0);
        const double step = 2.0 * 3.14159265358979323846 / order_;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            const double a = step * static_cast<double>(i);
            acc += c_[i].get_d() * std::complex<double>(std::cos(a), std::sin(a));
        }
        return acc;
    }

    bool operator==(const Cyclo& o) const {
        if (order_ == o.order_) return c_ == o.c_;
        return (*this - o).is_zero();
    }

    std::string to_string() const {
        if (order_ == 1) return c_[0].get_str();
        std::string s = "(";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ", ";
            s += c_[i].get_str();
        }
        s += ") in Q(zeta_" + std::to_string(order_) + ")";
        return s;
    }

    std::size_t hash() const {
        std::size_t h = static_cast<std::size_t>(order_);
        for (const auto& x : c_) h = h * 1000003 ^ hash_rational(x);
        return h;
    }

private:
    Poly<Rational> as_poly() const { return Poly<Rational>(c_); }

    void add_power(const detail::CycloTable& t, int k, const Rational& coef) {
        if (sgn(coef) == 0) return;
        const int phi = t.phi;
        int e = k % order_;
        // Exponents >= phi need one reduction step; order <= 2*phi guarantees
        // e stays within the precomputed table after folding by the order.
        if (e < phi) {
            c_[static_cast<std::size_t>(e)] += coef;
        } else {
            const auto& row = t.high_powers[static_cast<std::size_t>(e - phi)];
            for (int i = 0; i < phi; ++i) c_[static_cast<std::size_t>(i)] += coef * row[static_cast<std::size_t>(i)];
        }
    }

    void canonicalize() {
        if (order_ == 1) return;
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (sgn(c_[i]) != 0) return;
        Rational v = c_.empty() ? Rational(0) : c_[0];
        order_ = 1;
        c_.assign(1, std::move(v));
    }

    // Both results share the target order; no re-canonicalization here, the
    // operation that consumes the pair canonicalizes its result.
    static std::pair<Cyclo, Cyclo> promote(const Cyclo& a, const Cyclo& b) {
        if (a.order_ == b.order_) return {a, b};
        const int target = std::lcm(a.order_, b.order_);
        return {a.lift_raw(target), b.lift_raw(target)};
    }

    Cyclo lift_raw(int target) const {
        if (target == order_) return *this;
        if (target % order_ != 0)
            throw DomainMismatch("cannot mix cyclotomic orders " + std::to_string(order_) + " and " +
                                 std::to_string(target));
        const int stride = target / order_;
        Cyclo r;
        r.order_ = target;
        const auto& t = detail::cyclo_table(target);
        r.c_.assign(static_cast<std::size_t>(t.phi), Rational(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r.add_power(t, static_cast<int>(i) * stride, c_[i]);
        return r;
    }

    int order_;
    std::vector<Rational> c_;
};

template <>
struct scalar_traits<Cyclo> {
    static constexpr bool is_exact = true;
    static Cyclo zero() { return Cyclo(); }
    static Cyclo one() { return Cyclo(Rational(1)); }
    static bool is_zero(const Cyclo& x) { return x.is_zero(); }
    static Cyclo from_int(long v) { return Cyclo(Rational(v)); }
    static Cyclo from_rational(const Rational& q) { return Cyclo(q); }
    static std::complex<double> to_complex(const Cyclo& x) { return x.to_complex(); }
};

}  // namespace p1dyn

template <>
struct std::hash<p1dyn::Cyclo> {
    std::size_t operator()(const p1dyn::Cyclo& x) const { return x.hash(); }
};
