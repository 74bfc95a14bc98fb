#pragma once

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "p1dyn/errors.hpp"
#include "p1dyn/poly.hpp"
#include "p1dyn/proj.hpp"
#include "p1dyn/scalar.hpp"

namespace p1dyn {

// Mobius transformation z -> (a z + b) / (c z + d), det != 0.
template <class K>
struct Mobius {
    K a, b, c, d;

    Mobius(K a_, K b_, K c_, K d_) : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
        if (!definitely_nonzero(det())) throw SingularMobius("Mobius matrix has zero determinant");
    }

    static Mobius identity() {
        return Mobius(scalar_traits<K>::one(), scalar_traits<K>::zero(), scalar_traits<K>::zero(),
                      scalar_traits<K>::one());
    }
    // z -> 1/z
    static Mobius inversion() {
        return Mobius(scalar_traits<K>::zero(), scalar_traits<K>::one(), scalar_traits<K>::one(),
                      scalar_traits<K>::zero());
    }

    K det() const { return a * d - b * c; }

    // Projective inverse (adjugate); no division needed.
    Mobius inverse() const { return Mobius(d, -b, -c, a); }

    ProjPoint<K> apply(const ProjPoint<K>& p) const {
        return ProjPoint<K>(a * p.x() + b * p.z(), c * p.x() + d * p.z());
    }

    friend Mobius operator*(const Mobius& m, const Mobius& n) {
        return Mobius(m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d);
    }

private:
    static bool definitely_nonzero(const K& v) {
        if constexpr (std::is_same_v<K, CBall>)
            return v.definitely_nonzero();
        else
            return !scalar_traits<K>::is_zero(v);
    }
};

// Degree-d rational self-map of P^1 as a coprime numerator/denominator pair.
// Coefficients are ascending; the declared degree pins the homogenization, so
// trailing zeros up to degree d are meaningful.
template <class K>
class RationalMap {
public:
    // Validating constructor: checks the degree bound, exact-domain
    // coprimality, and nonvanishing of the homogeneous resultant.
    static RationalMap create(Poly<K> num, Poly<K> den, int degree) {
        if (degree < 1) throw DegenerateMap("declared degree must be >= 1");
        if (std::max(num.degree(), den.degree()) != degree)
            throw DegenerateMap("max(deg num, deg den) must equal the declared degree");
        if constexpr (scalar_traits<K>::is_exact) {
            Poly<K> g = poly_gcd(num, den);
            if (g.degree() > 0) throw DegenerateMap("numerator and denominator share a factor");
        }
        RationalMap f(std::move(num), std::move(den), degree);
        if (!f.nondegenerate()) throw DegenerateMap("homogeneous resultant vanishes");
        return f;
    }

    // For compositions of already-validated maps, where nondegeneracy and
    // coprimality follow from resultant multiplicativity.
    static RationalMap unchecked(Poly<K> num, Poly<K> den, int degree) {
        return RationalMap(std::move(num), std::move(den), degree);
    }

    int degree() const { return d_; }
    const Poly<K>& num() const { return num_; }
    const Poly<K>& den() const { return den_; }

    // Homogeneous resultant of the degree-d homogenizations.
    K homogeneous_resultant() const { return resultant(num_, den_, d_, d_); }

    bool nondegenerate() const {
        const K res = homogeneous_resultant();
        if constexpr (std::is_same_v<K, CBall>)
            return res.definitely_nonzero();
        else if constexpr (scalar_traits<K>::is_exact)
            return !scalar_traits<K>::is_zero(res);
        else {
            // Floating: compare against the coefficient scale of the Sylvester
            // matrix to make the test normalization independent.
            double scale = 0.0;
            for (const auto& c : num_.coeffs()) scale = std::max(scale, std::abs(scalar_traits<K>::to_complex(c)));
            for (const auto& c : den_.coeffs()) scale = std::max(scale, std::abs(scalar_traits<K>::to_complex(c)));
            const double bound = std::pow(scale, 2.0 * d_);
            return std::abs(scalar_traits<K>::to_complex(res)) > 1e-12 * bound;
        }
    }

    // Homogeneous evaluation: (X : Z) -> (N*(X,Z) : D*(X,Z)), which covers
    // the point at infinity without special cases.
    ProjPoint<K> eval(const ProjPoint<K>& p) const {
        K nx, dz;
        eval_homogeneous(p.x(), p.z(), nx, dz);
        if (scalar_traits<K>::is_zero(nx) && scalar_traits<K>::is_zero(dz))
            throw DegenerateMap("map evaluated to (0:0); degenerate input");
        return ProjPoint<K>(std::move(nx), std::move(dz));
    }

    ProjPoint<K> iterate(ProjPoint<K> p, int n) const {
        for (int i = 0; i < n; ++i) p = eval(p);
        return p;
    }

    // Affine derivative at an affine point with D(z) != 0.
    K derivative_affine(const K& z) const {
        const K dz = den_.eval(z);
        if (!nonzero_value(dz)) throw SingularPoint("derivative requested at a pole");
        const K nz = num_.eval(z);
        const K dn = num_.derivative().eval(z);
        const K dd = den_.derivative().eval(z);
        return (dn * dz - nz * dd) / (dz * dz);
    }

    // f(g(z)) with degree deg f * deg g; exact domains get content-reduced
    // coefficients. Nondegenerate inputs compose to nondegenerate maps, which
    // is asserted cheaply at small degree.
    friend RationalMap compose(const RationalMap& f, const RationalMap& g) {
        auto [cn, cd] = compose_pair(f, g);
        const int deg = f.d_ * g.d_;
        if constexpr (std::is_same_v<K, Rational>) {
            // Joint content reduction keeps coefficients small without
            // changing the map (both parts scale by the same unit).
            const Rational cnum = cn.is_zero() ? Rational(0) : primitive_parts(cn).first;
            const Rational cden = cd.is_zero() ? Rational(0) : primitive_parts(cd).first;
            Rational unit = rational_content_gcd(cnum, cden);
            if (sgn(unit) != 0) {
                cn = (Rational(1) / unit) * cn;
                cd = (Rational(1) / unit) * cd;
            }
        }
        RationalMap h(std::move(cn), std::move(cd), deg);
        if constexpr (scalar_traits<K>::is_exact)
            if (deg <= 16 && !h.nondegenerate()) throw DegenerateMap("composition became degenerate");
        return h;
    }

    // A o f o A^{-1}; same degree, and Preper/cycles transport through A.
    friend RationalMap conjugate(const RationalMap& f, const Mobius<K>& A) {
        const Mobius<K> Ainv = A.inverse();
        RationalMap am = mobius_as_map(A);
        RationalMap aim = mobius_as_map(Ainv);
        RationalMap inner = compose(f, aim);
        RationalMap outer = compose(am, inner);
        // Composition with degree-1 maps keeps the true degree at deg f.
        return RationalMap(outer.num_, outer.den_, f.d_);
    }

    bool operator==(const RationalMap& o) const {
        // Equality as maps: cross products of coefficient vectors agree.
        if (d_ != o.d_) return false;
        Poly<K> lhs = num_ * o.den_;
        Poly<K> rhs = o.num_ * den_;
        return lhs == rhs;
    }

private:
    RationalMap(Poly<K> num, Poly<K> den, int degree) : num_(std::move(num)), den_(std::move(den)), d_(degree) {}

    // gcd(a, b) for rational contents: gcd of numerators over lcm of
    // denominators, with the sign of the first nonzero argument dropped.
    static Rational rational_content_gcd(const Rational& a, const Rational& b) {
        if (sgn(a) == 0) return abs(b);
        if (sgn(b) == 0) return abs(a);
        mpz_class gn, dl;
        mpz_gcd(gn.get_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
        mpz_lcm(dl.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
        Rational r(gn, dl);
        r.canonicalize();
        return r;
    }

    static bool nonzero_value(const K& v) {
        if constexpr (std::is_same_v<K, CBall>)
            return v.definitely_nonzero();
        else
            return !scalar_traits<K>::is_zero(v);
    }

    // N*(X,Z), D*(X,Z) at the declared degree.
    void eval_homogeneous(const K& x, const K& z, K& nx, K& dz) const {
        std::vector<K> zpow(static_cast<std::size_t>(d_) + 1);
        std::vector<K> xpow(static_cast<std::size_t>(d_) + 1);
        zpow[0] = xpow[0] = scalar_traits<K>::one();
        for (int i = 1; i <= d_; ++i) {
            zpow[static_cast<std::size_t>(i)] = zpow[static_cast<std::size_t>(i - 1)] * z;
            xpow[static_cast<std::size_t>(i)] = xpow[static_cast<std::size_t>(i - 1)] * x;
        }
        nx = scalar_traits<K>::zero();
        dz = scalar_traits<K>::zero();
        for (int i = 0; i <= d_; ++i) {
            const K m = xpow[static_cast<std::size_t>(i)] * zpow[static_cast<std::size_t>(d_ - i)];
            nx = nx + num_.coeff(i) * m;
            dz = dz + den_.coeff(i) * m;
        }
    }

    static RationalMap mobius_as_map(const Mobius<K>& A) {
        return RationalMap(Poly<K>(std::vector<K>{A.b, A.a}), Poly<K>(std::vector<K>{A.d, A.c}), 1);
    }

    static std::pair<Poly<K>, Poly<K>> compose_pair(const RationalMap& f, const RationalMap& g) {
        // Sum over i of coeff_i * Ng^i * Dg^{df - i}, for numerator and
        // denominator of f alike (the homogenized coefficients of f).
        std::vector<Poly<K>> npow(static_cast<std::size_t>(f.d_) + 1), dpow(static_cast<std::size_t>(f.d_) + 1);
        npow[0] = dpow[0] = Poly<K>(scalar_traits<K>::one());
        for (int i = 1; i <= f.d_; ++i) {
            npow[static_cast<std::size_t>(i)] = npow[static_cast<std::size_t>(i - 1)] * g.num_;
            dpow[static_cast<std::size_t>(i)] = dpow[static_cast<std::size_t>(i - 1)] * g.den_;
        }
        Poly<K> cn, cd;
        for (int i = 0; i <= f.d_; ++i) {
            const Poly<K> m = npow[static_cast<std::size_t>(i)] * dpow[static_cast<std::size_t>(f.d_ - i)];
            if (!scalar_traits<K>::is_zero(f.num_.coeff(i))) cn = cn + f.num_.coeff(i) * m;
            if (!scalar_traits<K>::is_zero(f.den_.coeff(i))) cd = cd + f.den_.coeff(i) * m;
        }
        return {std::move(cn), std::move(cd)};
    }

    Poly<K> num_, den_;
    int d_;
};

template <class K>
RationalMap<std::complex<double>> map_to_complex(const RationalMap<K>& f) {
    return RationalMap<std::complex<double>>::unchecked(to_complex_poly(f.num()), to_complex_poly(f.den()),
                                                        f.degree());
}

}  // namespace p1dyn
