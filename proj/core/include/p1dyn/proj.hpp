#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>

#include "p1dyn/errors.hpp"
#include "p1dyn/scalar.hpp"

namespace p1dyn {

// Point of P^1 in homogeneous coordinates (X : Z), kept normalized:
//   exact domains   -> (x, 1) with x the reduced affine value, or (1, 0);
//   floating domains -> the larger-magnitude coordinate is scaled to 1.
// Normalization is idempotent and (X:Z) == (lambda X : lambda Z).
template <class K>
class ProjPoint {
public:
    ProjPoint() : x_(scalar_traits<K>::zero()), z_(scalar_traits<K>::one()) {}

    ProjPoint(K x, K z) : x_(std::move(x)), z_(std::move(z)) { normalize(); }

    static ProjPoint affine(K value) { return ProjPoint(std::move(value), scalar_traits<K>::one()); }
    static ProjPoint infinity() { return ProjPoint(scalar_traits<K>::one(), scalar_traits<K>::zero(), raw_tag{}); }

    const K& x() const { return x_; }
    const K& z() const { return z_; }

    bool is_infinity() const { return scalar_traits<K>::is_zero(z_); }

    // Affine value; only valid away from infinity. Exact points are stored
    // as (x, 1); floating points may sit in the (1, w) chart.
    K affine_value() const {
        if (is_infinity()) throw DomainMismatch("affine value of the point at infinity");
        if constexpr (scalar_traits<K>::is_exact)
            return x_;
        else
            return x_ / z_;
    }

    std::complex<double> to_complex() const {
        // Infinity maps to a quiet huge value; callers that care test
        // is_infinity() first.
        if (is_infinity()) return {std::numeric_limits<double>::infinity(), 0.0};
        return scalar_traits<K>::to_complex(x_) / scalar_traits<K>::to_complex(z_);
    }

    bool operator==(const ProjPoint& o) const {
        // Cross-multiplied equality is normalization independent.
        return scalar_traits<K>::is_zero(x_ * o.z_ - o.x_ * z_);
    }

private:
    struct raw_tag {};
    ProjPoint(K x, K z, raw_tag) : x_(std::move(x)), z_(std::move(z)) {}

    void normalize() {
        const bool xz = scalar_traits<K>::is_zero(x_);
        const bool zz = scalar_traits<K>::is_zero(z_);
        if (xz && zz) throw DomainMismatch("(0 : 0) is not a point of P^1");
        if constexpr (scalar_traits<K>::is_exact) {
            if (!zz) {
                x_ = x_ / z_;
                z_ = scalar_traits<K>::one();
            } else {
                x_ = scalar_traits<K>::one();
            }
        } else {
            const double ax = std::abs(scalar_traits<K>::to_complex(x_));
            const double az = std::abs(scalar_traits<K>::to_complex(z_));
            if (ax > az) {
                z_ = z_ / x_;
                x_ = scalar_traits<K>::one();
            } else {
                x_ = x_ / z_;
                z_ = scalar_traits<K>::one();
            }
        }
    }

    K x_, z_;
};

// Chordal (Fubini-Study) distance between floating points, in [0, sqrt(2)].
template <class K>
double chordal_distance(const ProjPoint<K>& a, const ProjPoint<K>& b) {
    const std::complex<double> ax = scalar_traits<K>::to_complex(a.x()), az = scalar_traits<K>::to_complex(a.z());
    const std::complex<double> bx = scalar_traits<K>::to_complex(b.x()), bz = scalar_traits<K>::to_complex(b.z());
    const double num = std::abs(ax * bz - bx * az);
    const double na = std::sqrt(std::norm(ax) + std::norm(az));
    const double nb = std::sqrt(std::norm(bx) + std::norm(bz));
    return num / (na * nb);
}

template <class K>
std::size_t point_hash(const ProjPoint<K>& p) {
    static_assert(scalar_traits<K>::is_exact, "hashing is for exact points");
    std::size_t hx, hz;
    if constexpr (std::is_same_v<K, Rational>) {
        hx = hash_rational(p.x());
        hz = hash_rational(p.z());
    } else {
        hx = p.x().hash();
        hz = p.z().hash();
    }
    return hx * 0x9e3779b97f4a7c15ULL + hz;
}

template <class K>
struct ProjPointHash {
    std::size_t operator()(const ProjPoint<K>& p) const { return point_hash(p); }
};

}  // namespace p1dyn
