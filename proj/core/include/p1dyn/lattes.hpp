#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "p1dyn/errors.hpp"
#include "p1dyn/map.hpp"
#include "p1dyn/poly.hpp"
#include "p1dyn/poly2.hpp"
#include "p1dyn/roots.hpp"

namespace p1dyn {

// Legendre curve y^2 = x(x-1)(x-t), t not in {0, 1}; the degree-4 Lattes map
// below is the quotient of its multiplication-by-2 endomorphism through the
// x-coordinate.
struct LegendreCurve {
    Rational t;

    explicit LegendreCurve(Rational t_) : t(std::move(t_)) {
        if (t == 0 || t == 1) throw DegenerateParameter("Legendre parameter t must avoid {0, 1}");
    }

    // x(x-1)(x-t) as an exact polynomial.
    Poly<Rational> weierstrass() const {
        return Poly<Rational>(std::vector<Rational>{Rational(0), t, -(Rational(1) + t), Rational(1)});
    }

    // x-coordinate of 2P for affine P = (x, y) off the 2-torsion; rational in
    // x because only y^2 enters.
    Rational duplicate_x(const Rational& x) const;
};

// f_t(z) = (z^2 - t)^2 / (4 z (z-1) (z-t)).
template <class K>
RationalMap<K> legendre_lattes(const K& t) {
    const K zero = scalar_traits<K>::zero(), one = scalar_traits<K>::one();
    const K four = scalar_traits<K>::from_int(4);
    bool bad;
    if constexpr (scalar_traits<K>::is_exact)
        bad = scalar_traits<K>::is_zero(t) || scalar_traits<K>::is_zero(t - one);
    else
        bad = std::abs(scalar_traits<K>::to_complex(t)) < 1e-12 ||
              std::abs(scalar_traits<K>::to_complex(t) - Cx(1.0, 0.0)) < 1e-12;
    if (bad) throw DegenerateParameter("Legendre parameter t must avoid {0, 1}");
    Poly<K> num(std::vector<K>{t * t, zero, -(t + t), zero, one});
    Poly<K> den(std::vector<K>{zero, four * t, -(four * (one + t)), four, zero});
    return RationalMap<K>::create(std::move(num), std::move(den), 4);
}

// x-coordinates of the nonzero N-torsion points of E_t, in Legendre
// coordinates. For odd N these are the (N^2-1)/2 roots of the reduced
// division polynomial; even N adds the three 2-torsion x-coordinates
// {0, 1, t} exactly (each with a single y-preimage, unlike the generic two).
struct TorsionXSet {
    int N = 2;
    Rational t;
    std::vector<Rational> exact;   // 2-torsion part, present for even N
    std::vector<RootDisk> disks;   // remaining x-coordinates
    Poly<Rational> full_poly;      // vanishing exactly on all the x-coords

    std::size_t count() const { return exact.size() + disks.size(); }
};

// Division polynomial machinery (standard recurrences on the shifted
// short-Weierstrass model), returned in Legendre coordinates.
Poly<Rational> division_poly_legendre(const Rational& t, int N);
TorsionXSet division_x(const Rational& t, int N, double tol = 1e-10);

// One-time symbolic identity (x^2 - t)^2 = W'(x)^2 + 4 W(x) (1 + t - 2x)
// over Q[t, x]; this is f_t(x) = x(2P) as a rational-function identity.
bool duplication_identity_symbolic();

struct DuplicationReport {
    int samples = 0;
    double max_residual = 0.0;
    bool exact_rational_ok = false;  // exact spot check at a rational sample
    bool two_torsion_ok = false;     // x in {0,1,t} maps to infinity on both sides
};

DuplicationReport verify_duplication(const Rational& t, int samples, std::uint64_t seed);

struct TorsionOrbitEntry {
    Cx x{0.0, 0.0};
    bool exact = false;
    int steps_to_infinity = -1;  // >= 0 when the orbit hits the fixed point
    int preperiod = -1, period = -1;
    bool certified_preperiodic = false;
};

struct TorsionOrbitReport {
    int N = 2;
    std::vector<TorsionOrbitEntry> entries;
    bool all_preperiodic = false;
};

// Certify that every N-torsion x-coordinate is preperiodic for f_t; for
// 2-power torsion the orbit must reach the fixed point at infinity in at
// most log2(N) steps.
TorsionOrbitReport torsion_preperiodicity(const Rational& t, int N, double tol = 1e-8);

struct RouHit {
    int N = 0;       // torsion order
    int m = 0;       // root-of-unity order (minimal among those tested)
    Cx x{0.0, 0.0};  // the common point
    bool exact = false;
    Rational exact_value{0};
};

// All pairs (x, m): x a torsion x-coordinate for some N <= N_max and an m-th
// root of unity with m <= M_max; decided exactly through polynomial gcds
// with x^m - 1.
std::vector<RouHit> torsion_vs_rou(const Rational& t, int N_max, int M_max);

}  // namespace p1dyn
