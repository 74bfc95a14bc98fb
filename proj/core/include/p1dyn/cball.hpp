#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "p1dyn/rational.hpp"
#include "p1dyn/scalar_fwd.hpp"

namespace p1dyn {

// Floating complex scalar carrying an error radius. Radii propagate to first
// order with the cross term included, plus a few ulps of rounding slop, so a
// value whose ball excludes zero is reliably nonzero at working precision.
struct CBall {
    std::complex<double> center{0.0, 0.0};
    double radius = 0.0;

    CBall() = default;
    CBall(double re, double im = 0.0, double r = 0.0) : center(re, im), radius(r) {}
    CBall(std::complex<double> c, double r = 0.0) : center(c), radius(r) {}

    static double slop(const std::complex<double>& v) {
        return 4.0 * std::numeric_limits<double>::epsilon() * std::abs(v) +
               std::numeric_limits<double>::denorm_min();
    }

    bool exactly_zero() const { return center == std::complex<double>(0.0, 0.0) && radius == 0.0; }
    bool definitely_nonzero() const { return std::abs(center) > radius; }
    bool contains_zero() const { return std::abs(center) <= radius; }

    CBall operator-() const { return CBall(-center, radius); }

    friend CBall operator+(const CBall& a, const CBall& b) {
        auto c = a.center + b.center;
        return CBall(c, a.radius + b.radius + slop(c));
    }
    friend CBall operator-(const CBall& a, const CBall& b) {
        auto c = a.center - b.center;
        return CBall(c, a.radius + b.radius + slop(c));
    }
    friend CBall operator*(const CBall& a, const CBall& b) {
        auto c = a.center * b.center;
        double r = std::abs(a.center) * b.radius + std::abs(b.center) * a.radius + a.radius * b.radius;
        return CBall(c, r + slop(c));
    }
    friend CBall operator/(const CBall& a, const CBall& b) {
        const double mb = std::abs(b.center);
        if (mb <= b.radius) return CBall(a.center / b.center, std::numeric_limits<double>::infinity());
        // 1/b enclosure, then multiply.
        CBall inv(1.0 / b.center, b.radius / (mb * (mb - b.radius)) + slop(1.0 / b.center));
        return a * inv;
    }

    bool operator==(const CBall& o) const { return center == o.center && radius == o.radius; }
};

template <>
struct scalar_traits<CBall> {
    static constexpr bool is_exact = false;
    static CBall zero() { return CBall(); }
    static CBall one() { return CBall(1.0); }
    static bool is_zero(const CBall& x) { return x.exactly_zero(); }
    static CBall from_int(long v) { return CBall(static_cast<double>(v)); }
    static CBall from_rational(const Rational& q) {
        const double c = q.get_d();
        return CBall(c, CBall::slop(c));
    }
    static std::complex<double> to_complex(const CBall& x) { return x.center; }
};

}  // namespace p1dyn
