#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "p1dyn/errors.hpp"
#include "p1dyn/map.hpp"
#include "p1dyn/orbit.hpp"
#include "p1dyn/poly2.hpp"
#include "p1dyn/roots.hpp"

namespace p1dyn {

// Equation f^n(z) = f^m(z); with exact_period set, the n-m cycle factor is
// replaced by its dynatomic quotient.
struct PreperSpec {
    int n = 1;
    int m = 0;
    bool exact_period = false;

    PreperSpec(int n_, int m_, bool exact = false) : n(n_), m(m_), exact_period(exact) {
        if (!(n > m && m >= 0)) throw BudgetExceeded("PreperSpec requires n > m >= 0");
    }
};

namespace detail {

inline int moebius_mu(int n) {
    int mu = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

inline long ipow(long b, int e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace detail

// Pairs (N_k, D_k) with f^k = N_k / D_k, k = 0..n.
template <class K>
std::vector<RationalMap<K>> iterate_maps(const RationalMap<K>& f, int n) {
    std::vector<RationalMap<K>> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    out.push_back(RationalMap<K>::unchecked(Poly<K>(std::vector<K>{scalar_traits<K>::zero(), scalar_traits<K>::one()}),
                                            Poly<K>(scalar_traits<K>::one()), 1));
    for (int k = 1; k <= n; ++k) out.push_back(compose(f, out.back()));
    return out;
}

// Numerator of f^n - f^m after clearing denominators and removing content;
// the root set (with infinity read off the homogeneous form) is exactly
// {z : f^n(z) = f^m(z)}.
template <class K>
Poly<K> preperiodic_equation(const RationalMap<K>& f, const PreperSpec& spec, long root_budget = 1 << 17) {
    if (detail::ipow(f.degree(), spec.n) > root_budget)
        throw BudgetExceeded("preperiodic equation degree exceeds the root budget");
    auto iters = iterate_maps(f, spec.n);
    Poly<K> H;
    if (!spec.exact_period) {
        H = iters[static_cast<std::size_t>(spec.n)].num() * iters[static_cast<std::size_t>(spec.m)].den() -
            iters[static_cast<std::size_t>(spec.m)].num() * iters[static_cast<std::size_t>(spec.n)].den();
    } else {
        // Dynatomic quotient in the target variable, composed with f^m: the
        // image point f^m(z) is required to have exact period n - m.
        const int p = spec.n - spec.m;
        Poly<K> numerator(scalar_traits<K>::one()), denominator(scalar_traits<K>::one());
        for (int q = 1; q <= p; ++q) {
            if (p % q) continue;
            // Cycle factor A_q composed with f^m, cleared: N_{q+m} D_m - N_m D_{q+m}.
            Poly<K> a = iters[static_cast<std::size_t>(q + spec.m)].num() * iters[static_cast<std::size_t>(spec.m)].den() -
                        iters[static_cast<std::size_t>(spec.m)].num() * iters[static_cast<std::size_t>(q + spec.m)].den();
            const int mu = detail::moebius_mu(p / q);
            if (mu == 1)
                numerator = numerator * a;
            else if (mu == -1)
                denominator = denominator * a;
        }
        H = div_exact(numerator, denominator);
    }
    if (H.is_zero()) throw DegenerateMap("f^n and f^m coincide as maps");
    if constexpr (std::is_same_v<K, Rational>) H = primitive_part(H);
    return H;
}

// ---------------------------------------------------------------------------
// One-parameter polynomial families as bivariate polynomials: f_c(z) given as
// a Poly2 (z outer, c inner). The quadratic family z^2 + c is the paper's.

inline Poly2<Rational> quadratic_family() {
    return poly2_z<Rational>() * poly2_z<Rational>() + poly2_c<Rational>();
}

template <class K>
Poly2<K> family_iterate(const Poly2<K>& f, int k) {
    Poly2<K> acc = poly2_z<K>();
    for (int i = 0; i < k; ++i) acc = substitute(f, acc);
    return acc;
}

// Exact-period-p polynomial via the Moebius-inversion product of
// f^q(z) - z factors; division is exact for these families and a remainder
// signals an implementation bug (NonExactDivision).
template <class K>
Poly2<K> dynatomic(const Poly2<K>& family, int p) {
    if (p < 1) throw BudgetExceeded("dynatomic period must be >= 1");
    Poly2<K> numerator = poly2_const(scalar_traits<K>::one());
    Poly2<K> denominator = poly2_const(scalar_traits<K>::one());
    for (int q = 1; q <= p; ++q) {
        if (p % q) continue;
        Poly2<K> a = family_iterate(family, q) - poly2_z<K>();
        const int mu = detail::moebius_mu(p / q);
        if (mu == 1)
            numerator = numerator * a;
        else if (mu == -1)
            denominator = denominator * a;
    }
    return div_exact(numerator, denominator);
}

// Points whose k-th image has exact period p while the (k-1)-th does not:
// dynatomic composed with f^k, divided exactly by dynatomic composed with
// f^{k-1}.
template <class K>
Poly2<K> preperiod_polynomial(const Poly2<K>& family, int k, int p) {
    if (k < 1) throw BudgetExceeded("preperiod must be >= 1");
    const Poly2<K> phi = dynatomic(family, p);
    const Poly2<K> hi = substitute(phi, family_iterate(family, k));
    const Poly2<K> lo = substitute(phi, family_iterate(family, k - 1));
    return div_exact(hi, lo);
}

// ---------------------------------------------------------------------------
// Functional evaluation of F(z) = cross(f^n(z), f^m(z)) for polynomial maps:
// projective iteration with dual numbers, renormalized by joint powers of two
// (locally constant, so value/deriv stays the true Newton ratio of the
// expanded polynomial without ever forming its catastrophically large
// coefficients).

namespace detail {

template <class S>
struct HomogCoeffs {
    std::vector<S> num, den;  // padded to degree+1
    int degree = 1;
};

template <class S, class K>
HomogCoeffs<S> to_homog(const RationalMap<K>& f) {
    HomogCoeffs<S> h;
    h.degree = f.degree();
    h.num.assign(static_cast<std::size_t>(h.degree) + 1, scalar_traits<S>::zero());
    h.den.assign(static_cast<std::size_t>(h.degree) + 1, scalar_traits<S>::zero());
    for (int i = 0; i <= h.degree; ++i) {
        if constexpr (std::is_same_v<S, CBall>) {
            const Cx c = scalar_traits<K>::to_complex(f.num().coeff(i));
            const Cx d = scalar_traits<K>::to_complex(f.den().coeff(i));
            h.num[static_cast<std::size_t>(i)] = CBall(c, CBall::slop(c));
            h.den[static_cast<std::size_t>(i)] = CBall(d, CBall::slop(d));
        } else {
            h.num[static_cast<std::size_t>(i)] = scalar_traits<K>::to_complex(f.num().coeff(i));
            h.den[static_cast<std::size_t>(i)] = scalar_traits<K>::to_complex(f.den().coeff(i));
        }
    }
    return h;
}

inline double ball_mag(const CBall& b) { return std::abs(b.center) + b.radius; }
inline double ball_mag(const Cx& c) { return std::abs(c); }

inline void scale_pow2(Cx& v, int e) { v = Cx(std::ldexp(v.real(), e), std::ldexp(v.imag(), e)); }
inline void scale_pow2(CBall& v, int e) {
    scale_pow2(v.center, e);
    v.radius = std::ldexp(v.radius, e);
}

template <class S>
struct ProjDual {
    Dual<S> X, Z;

    void renormalize() {
        const double m = std::max(std::max(ball_mag(X.value), ball_mag(Z.value)),
                                  std::max(ball_mag(X.deriv), ball_mag(Z.deriv)));
        if (m <= 0.0 || (m >= 0.5 && m <= 2.0)) return;
        const int e = -std::ilogb(m);
        scale_pow2(X.value, e);
        scale_pow2(X.deriv, e);
        scale_pow2(Z.value, e);
        scale_pow2(Z.deriv, e);
    }
};

template <class S>
ProjDual<S> proj_dual_start(Cx z) {
    ProjDual<S> p;
    if constexpr (std::is_same_v<S, CBall>) {
        p.X = Dual<S>(CBall(z, 0.0), CBall(1.0));
        p.Z = Dual<S>(CBall(1.0), CBall(0.0));
    } else {
        p.X = Dual<S>(z, Cx(1.0, 0.0));
        p.Z = Dual<S>(Cx(1.0, 0.0), Cx(0.0, 0.0));
    }
    p.renormalize();
    return p;
}

template <class S>
void proj_dual_step(const HomogCoeffs<S>& f, ProjDual<S>& p) {
    const int d = f.degree;
    std::vector<Dual<S>> xp(static_cast<std::size_t>(d) + 1), zp(static_cast<std::size_t>(d) + 1);
    xp[0] = zp[0] = Dual<S>(scalar_traits<S>::one());
    for (int i = 1; i <= d; ++i) {
        xp[static_cast<std::size_t>(i)] = xp[static_cast<std::size_t>(i - 1)] * p.X;
        zp[static_cast<std::size_t>(i)] = zp[static_cast<std::size_t>(i - 1)] * p.Z;
    }
    Dual<S> nx(scalar_traits<S>::zero()), dz(scalar_traits<S>::zero());
    for (int i = 0; i <= d; ++i) {
        const Dual<S> mono = xp[static_cast<std::size_t>(i)] * zp[static_cast<std::size_t>(d - i)];
        nx = nx + Dual<S>(f.num[static_cast<std::size_t>(i)]) * mono;
        dz = dz + Dual<S>(f.den[static_cast<std::size_t>(i)]) * mono;
    }
    p.X = nx;
    p.Z = dz;
    p.renormalize();
}

// cross(F^n, F^m) = X_n Z_m - X_m Z_n as a dual; both products share the
// joint rescale, so value/deriv equals H/H' for the expanded equation H.
template <class S>
Dual<S> preper_cross(const HomogCoeffs<S>& f, int n, int m, Cx z) {
    ProjDual<S> p = proj_dual_start<S>(z);
    ProjDual<S> at_m = p;
    for (int k = 1; k <= n; ++k) {
        proj_dual_step(f, p);
        if (k == m) at_m = p;
    }
    return p.X * at_m.Z - at_m.X * p.Z;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Enumeration of preperiodic points and pair intersection.

struct OrbitSummary {
    int preperiod = 0;
    int period = 0;
    std::string cls;
    std::string status;
    std::string multiplier;
};

template <class K>
OrbitSummary summarize(const OrbitRecord<K>& rec) {
    OrbitSummary s;
    s.preperiod = rec.preperiod;
    s.period = rec.period;
    s.cls = cycle_class_name(rec.cls);
    s.status = orbit_status_name(rec.status);
    if constexpr (std::is_same_v<K, Rational>)
        s.multiplier = rec.multiplier.get_str();
    else if constexpr (std::is_same_v<K, Cyclo>)
        s.multiplier = rec.multiplier.to_string();
    else {
        const Cx m = scalar_traits<K>::to_complex(rec.multiplier);
        s.multiplier = std::to_string(m.real()) + (m.imag() < 0 ? "" : "+") + std::to_string(m.imag()) + "i";
    }
    return s;
}

struct PreperPoint {
    Cx center{0.0, 0.0};
    double radius = 0.0;
    bool at_infinity = false;
    bool certified_disk = false;
    std::optional<Rational> exact;  // set when the point is proven rational
    OrbitSummary orbit;
    int eq_n = 0, eq_m = 0;  // the (n, m) equation the point was found on
};

struct EnumerateResult {
    std::vector<PreperPoint> points;
    bool complete = true;  // false when some equation had uncertified clusters
};

enum class MatchCertification { exact, numeric };

struct MatchedPoint {
    Cx center{0.0, 0.0};
    bool at_infinity = false;
    std::optional<Rational> exact;
    OrbitSummary f_orbit, g_orbit;
    MatchCertification certification = MatchCertification::numeric;
    double residual = 0.0;  // certified root-distance bound for numeric matches
};

namespace detail {

// Continued-fraction rational reconstruction near a real double.
inline std::optional<Rational> reconstruct_rational(double x, double eps, long max_den = 1 << 24) {
    if (!std::isfinite(x)) return std::nullopt;
    mpq_class q;
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = x;
    for (int it = 0; it < 64; ++it) {
        const double fl = std::floor(v);
        if (fl > 1e17 || fl < -1e17) break;
        const long a = static_cast<long>(fl);
        const long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den || q2 < 0) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const double approx = static_cast<double>(p1) / static_cast<double>(q1);
        if (std::abs(approx - x) <= eps) {
            Rational r(p1, q1);
            r.canonicalize();
            return r;
        }
        const double frac = v - fl;
        if (frac < 1e-15) break;
        v = 1.0 / frac;
    }
    return std::nullopt;
}

}  // namespace detail

// Union of the (max_n, m) root sets for m < max_n, which equals the union of
// all (n, m) solution sets with n <= max_n (any point with preperiod k and
// period p, k + p <= max_n, solves (max_n, m) for a suitable m >= k).
// Infinity is tested separately through the exact orbit. Points carry their
// floating orbit classification, upgraded to a certified-exact record when
// rational reconstruction succeeds and exact iteration confirms.
template <class K>
EnumerateResult enumerate_preperiodic(const RationalMap<K>& f, int max_n, double tol, long root_budget = 1 << 17) {
    static_assert(scalar_traits<K>::is_exact || std::is_same_v<K, CBall> || std::is_same_v<K, Cx>);
    if (max_n < 1) throw BudgetExceeded("max_n must be >= 1");
    const int d = f.degree();
    if (detail::ipow(d, max_n) > root_budget) throw BudgetExceeded("d^max_n exceeds the root budget");
    const bool polynomial_map = f.den().degree() == 0;

    EnumerateResult out;
    const RationalMap<Cx> fc = map_to_complex(f);

    // Escape-style radius bound for the initial circles.
    double coef_sum = 0.0, lead = std::abs(scalar_traits<K>::to_complex(f.num().lead()));
    for (int i = 0; i < f.num().degree(); ++i)
        coef_sum += std::abs(scalar_traits<K>::to_complex(f.num().coeff(i)));
    if (polynomial_map) coef_sum += std::abs(scalar_traits<K>::to_complex(f.den().coeff(0)));
    const double radius_hint = 1.0 + std::max(1.0, coef_sum / std::max(lead, 1e-300));

    struct RawPoint {
        RootDisk disk;
        int n, m;
    };
    std::vector<RawPoint> raw;

    for (int m = 0; m < max_n; ++m) {
        const long deg_exp = detail::ipow(d, max_n) + detail::ipow(d, m);
        // Expanded coefficients of iterated maps grow doubly exponentially
        // and double-precision evaluation cancels catastrophically well
        // before degree 64. Polynomial maps use the functional evaluator for
        // everything but tiny degrees (kept expanded so that square-free
        // multiplicities of postcritically finite maps stay exact).
        if (polynomial_map && deg_exp > 24) {
            // Functional path: never expands coefficients.
            auto hc = detail::to_homog<Cx>(f);
            auto hb = detail::to_homog<CBall>(f);
            const int n_aff = static_cast<int>(detail::ipow(d, max_n));
            EvalFn eval = [&hc, max_n, m](Cx z) -> EvalPair {
                const Dual<Cx> c = detail::preper_cross(hc, max_n, m, z);
                return {c.value, c.deriv};
            };
            BallEvalFn ball = [&hb, max_n, m](Cx z) -> BallPair {
                const Dual<CBall> c = detail::preper_cross(hb, max_n, m, z);
                return {c.value, c.deriv};
            };
            std::vector<Cx> approx = aberth_iterate(eval, initial_circle(n_aff, radius_hint));
            RootResult rr = certify_simple(approx, ball, n_aff, std::max(tol, 1e-12));
            if (rr.refinement_failed) out.complete = false;
            for (const auto& disk : rr.disks) raw.push_back({disk, max_n, m});
        } else {
            Poly<K> H = preperiodic_equation(f, PreperSpec(max_n, m), root_budget);
            RootResult rr = find_roots(H, std::max(tol, 1e-12));
            if (rr.refinement_failed) out.complete = false;
            for (const auto& disk : rr.disks) raw.push_back({disk, max_n, m});
        }
    }

    // Deduplicate by disk overlap; keep the smallest certified disk.
    std::sort(raw.begin(), raw.end(), [](const RawPoint& a, const RawPoint& b) {
        if (a.disk.center.real() != b.disk.center.real()) return a.disk.center.real() < b.disk.center.real();
        return a.disk.center.imag() < b.disk.center.imag();
    });
    std::vector<RawPoint> dedup;
    for (const auto& rp : raw) {
        bool merged = false;
        for (auto& kept : dedup) {
            const double dist = std::abs(kept.disk.center - rp.disk.center);
            // Uncertified disks carry meaningless radii; cap their reach so
            // one bad disk cannot swallow the whole point set.
            const double reach =
                std::max({std::min(kept.disk.radius, 1e-5), std::min(rp.disk.radius, 1e-5), 0.5 * tol});
            if (dist <= reach * 2.0 + 1e-13) {
                if (rp.disk.radius < kept.disk.radius) kept = rp;
                merged = true;
                break;
            }
        }
        if (!merged) dedup.push_back(rp);
    }

    const int classify_budget = 4 * max_n + 8;
    for (const auto& rp : dedup) {
        PreperPoint pt;
        pt.center = rp.disk.center;
        pt.radius = rp.disk.radius;
        pt.certified_disk = rp.disk.certified;
        pt.eq_n = rp.n;
        pt.eq_m = rp.m;
        bool have_exact = false;
        if constexpr (std::is_same_v<K, Rational>) {
            if (std::abs(pt.center.imag()) <= std::max(pt.radius, 1e-10)) {
                auto cand = detail::reconstruct_rational(pt.center.real(), std::max(pt.radius, 1e-10));
                if (cand) {
                    auto rec = orbit_classify(f, ProjPoint<Rational>::affine(*cand), classify_budget, tol, 4096);
                    if (rec.preperiodic() && rec.preperiod + rec.period <= max_n) {
                        pt.exact = *cand;
                        pt.center = Cx(cand->get_d(), 0.0);
                        pt.radius = 0.0;
                        pt.orbit = summarize(rec);
                        have_exact = true;
                    }
                }
            }
        }
        if (!have_exact) {
            auto rec = orbit_classify(fc, ProjPoint<Cx>::affine(pt.center), classify_budget,
                                      std::max(tol, 20.0 * pt.radius + 1e-12));
            pt.orbit = summarize(rec);
        }
        out.points.push_back(std::move(pt));
    }

    // Infinity, tested separately via the exact orbit.
    {
        auto rec = orbit_classify(f, ProjPoint<K>::infinity(), classify_budget, tol);
        if (rec.preperiodic() && rec.preperiod + rec.period <= max_n) {
            PreperPoint pt;
            pt.at_infinity = true;
            pt.certified_disk = true;
            pt.eq_n = max_n;
            pt.eq_m = max_n - rec.period * ((max_n - rec.preperiod) / rec.period);
            pt.orbit = summarize(rec);
            out.points.push_back(std::move(pt));
        }
    }
    return out;
}

// Intersection of the two enumerations. A numeric match needs disk overlap
// plus a certified cross-residual after refinement: Newton-refine on one
// defining equation, then bound the distance to a root of the other map's
// equation; both bounds must clear the matching tolerance. Exact rational
// matches are verified by exact orbit detection under both maps.
template <class K>
std::vector<MatchedPoint> common_preperiodic(const RationalMap<K>& f, const RationalMap<K>& g, int max_n, double tol,
                                             long root_budget = 1 << 17, double match_residual = 1e-9) {
    EnumerateResult ef = enumerate_preperiodic(f, max_n, tol, root_budget);
    EnumerateResult eg = enumerate_preperiodic(g, max_n, tol, root_budget);
    const RationalMap<Cx> fc = map_to_complex(f), gc = map_to_complex(g);
    const bool fpoly = f.den().degree() == 0, gpoly = g.den().degree() == 0;
    auto hcf = detail::to_homog<Cx>(f);
    auto hbf = detail::to_homog<CBall>(f);
    auto hcg = detail::to_homog<Cx>(g);
    auto hbg = detail::to_homog<CBall>(g);

    std::vector<MatchedPoint> out;
    const int classify_budget = 4 * max_n + 8;

    for (const auto& pf : ef.points) {
        if (pf.at_infinity) continue;
        for (const auto& pg : eg.points) {
            if (pg.at_infinity) continue;
            const double dist = std::abs(pf.center - pg.center);
            if (dist > pf.radius + pg.radius + tol) continue;

            MatchedPoint mp;
            if constexpr (std::is_same_v<K, Rational>) {
                if (pf.exact && pg.exact) {
                    if (*pf.exact != *pg.exact) continue;
                    mp.exact = *pf.exact;
                    mp.center = pf.center;
                    mp.certification = MatchCertification::exact;
                    mp.f_orbit = pf.orbit;
                    mp.g_orbit = pg.orbit;
                    out.push_back(std::move(mp));
                    continue;
                }
            }
            if (pf.exact != pg.exact) {
                // One side exact, other numeric: require the disks to agree
                // on the exact value.
                if (pf.exact && std::abs(Cx(pf.exact->get_d(), 0.0) - pg.center) > pg.radius + tol) continue;
                if (pg.exact && std::abs(Cx(pg.exact->get_d(), 0.0) - pf.center) > pf.radius + tol) continue;
            }

            // Refine on f's equation, then certify against both equations.
            Cx x = pf.exact ? Cx(pf.exact->get_d(), 0.0) : pf.center;
            if (fpoly) {
                for (int it = 0; it < 8; ++it) {
                    const Dual<Cx> c = detail::preper_cross(hcf, pf.eq_n, pf.eq_m, x);
                    if (std::abs(c.deriv) < 1e-300) break;
                    const Cx step = c.value / c.deriv;
                    x -= step;
                    if (std::abs(step) < 1e-15 * (1.0 + std::abs(x))) break;
                }
            }
            auto bound = [&](const detail::HomogCoeffs<CBall>& hb, int n, int m, long n_roots) -> double {
                const Dual<CBall> c = detail::preper_cross(hb, n, m, x);
                const double num = std::abs(c.value.center) + c.value.radius;
                const double den = std::abs(c.deriv.center) - c.deriv.radius;
                if (den <= 0.0) return std::numeric_limits<double>::infinity();
                return static_cast<double>(n_roots) * num / den;
            };
            double rf = std::numeric_limits<double>::infinity();
            double rg = std::numeric_limits<double>::infinity();
            if (fpoly) rf = bound(hbf, pf.eq_n, pf.eq_m, detail::ipow(f.degree(), pf.eq_n));
            if (gpoly) rg = bound(hbg, pg.eq_n, pg.eq_m, detail::ipow(g.degree(), pg.eq_n));
            if (!fpoly) rf = pf.radius + dist;  // fall back to the disk data
            if (!gpoly) rg = pg.radius + dist;
            if (rf > match_residual || rg > match_residual) continue;

            mp.center = x;
            mp.residual = std::max(rf, rg);
            mp.certification = MatchCertification::numeric;
            mp.f_orbit = pf.exact ? pf.orbit : summarize(orbit_classify(fc, ProjPoint<Cx>::affine(x), classify_budget,
                                                                        std::max(tol, 1e-7)));
            mp.g_orbit = pg.exact ? pg.orbit : summarize(orbit_classify(gc, ProjPoint<Cx>::affine(x), classify_budget,
                                                                        std::max(tol, 1e-7)));
            if (pf.exact)
                mp.exact = pf.exact;
            else if (pg.exact)
                mp.exact = pg.exact;
            if (mp.exact) mp.certification = MatchCertification::exact;
            out.push_back(std::move(mp));
        }
    }

    // Infinity: a common preperiodic point whenever both orbits terminate.
    {
        auto rf = orbit_classify(f, ProjPoint<K>::infinity(), classify_budget, tol);
        auto rg = orbit_classify(g, ProjPoint<K>::infinity(), classify_budget, tol);
        if (rf.preperiodic() && rg.preperiodic() && rf.preperiod + rf.period <= max_n &&
            rg.preperiod + rg.period <= max_n) {
            MatchedPoint mp;
            mp.at_infinity = true;
            mp.certification = MatchCertification::exact;
            mp.f_orbit = summarize(rf);
            mp.g_orbit = summarize(rg);
            out.push_back(std::move(mp));
        }
    }

    // Canonical order: infinity last, then lexicographic by position.
    std::sort(out.begin(), out.end(), [](const MatchedPoint& a, const MatchedPoint& b) {
        if (a.at_infinity != b.at_infinity) return !a.at_infinity;
        if (a.center.real() != b.center.real()) return a.center.real() < b.center.real();
        return a.center.imag() < b.center.imag();
    });
    // Drop duplicate matches produced by overlapping f/g disk pairs.
    std::vector<MatchedPoint> uniq;
    for (auto& mp : out) {
        bool dup = false;
        for (const auto& kept : uniq) {
            if (mp.at_infinity && kept.at_infinity) dup = true;
            if (!mp.at_infinity && !kept.at_infinity && std::abs(mp.center - kept.center) <= 1e-8) dup = true;
            if (dup) break;
        }
        if (!dup) uniq.push_back(std::move(mp));
    }
    return uniq;
}

}  // namespace p1dyn
