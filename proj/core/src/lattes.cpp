#include "p1dyn/lattes.hpp"

#include <cmath>
#include <map>
#include <random>

#include "p1dyn/measure.hpp"
#include "p1dyn/orbit.hpp"

namespace p1dyn {

Rational LegendreCurve::duplicate_x(const Rational& x) const {
    const Poly<Rational> W = weierstrass();
    const Rational w = W.eval(x);
    if (sgn(w) == 0) throw DegenerateParameter("2-torsion x-coordinate has no affine double");
    const Rational dw = W.derivative().eval(x);
    return dw * dw / (4 * w) + (1 + t) - 2 * x;
}

namespace {

// Element P(X) * y^e of Q[X][y] / (y^2 - (X^3 + pX + q)), e in {0, 1}.
struct EPoly {
    Poly<Rational> p;
    int ye = 0;
};

struct ShortModel {
    Rational shift;  // Legendre x = X + shift
    Rational p, q;   // y^2 = X^3 + pX + q
    Poly<Rational> W;
};

ShortModel short_model(const Rational& t) {
    ShortModel m;
    m.shift = (1 + t) / 3;
    // Substitute x = X + s into x(x-1)(x-t): the X^2 term cancels by choice
    // of s, leaving p = t - 3s^2 and q = ts - 2s^3.
    m.p = t - 3 * m.shift * m.shift;
    m.q = t * m.shift - 2 * m.shift * m.shift * m.shift;
    m.W = Poly<Rational>(std::vector<Rational>{m.q, m.p, Rational(0), Rational(1)});
    return m;
}

EPoly emul(const ShortModel& sm, const EPoly& a, const EPoly& b) {
    EPoly r;
    r.p = a.p * b.p;
    r.ye = a.ye + b.ye;
    if (r.ye == 2) {
        r.p = r.p * sm.W;
        r.ye = 0;
    }
    return r;
}

EPoly esub(const EPoly& a, const EPoly& b) {
    if (a.ye != b.ye) throw NonExactDivision("mixed y-parity in division-polynomial arithmetic");
    return {a.p - b.p, a.ye};
}

// Division by 2y: decrement the y power, multiplying through by W when the
// reduced form has no explicit y left.
EPoly div_2y(const ShortModel& sm, const EPoly& a) {
    if (a.ye == 1) return {Rational(1, 2) * a.p, 0};
    Poly<Rational> quotient = div_exact(a.p, sm.W);
    return {Rational(1, 2) * quotient, 1};
}

// psi_0..psi_N via the standard recurrences.
std::vector<EPoly> division_psis(const ShortModel& sm, int N) {
    const Rational& p = sm.p;
    const Rational& q = sm.q;
    std::vector<EPoly> psi(static_cast<std::size_t>(std::max(N, 4)) + 1);
    psi[0] = {Poly<Rational>{}, 0};
    psi[1] = {Poly<Rational>(Rational(1)), 0};
    psi[2] = {Poly<Rational>(Rational(2)), 1};
    psi[3] = {Poly<Rational>(std::vector<Rational>{-(p * p), 12 * q, 6 * p, Rational(0), Rational(3)}), 0};
    psi[4] = {Poly<Rational>(std::vector<Rational>{-4 * (8 * q * q + p * p * p), -16 * p * q, -20 * p * p,
                                                   80 * q, 20 * p, Rational(0), Rational(4)}),
              1};
    for (int n = 5; n <= N; ++n) {
        const int m = n / 2;
        if (n % 2 == 1) {
            psi[static_cast<std::size_t>(n)] =
                esub(emul(sm, psi[static_cast<std::size_t>(m + 2)],
                          emul(sm, psi[static_cast<std::size_t>(m)],
                               emul(sm, psi[static_cast<std::size_t>(m)], psi[static_cast<std::size_t>(m)]))),
                     emul(sm, psi[static_cast<std::size_t>(m - 1)],
                          emul(sm, psi[static_cast<std::size_t>(m + 1)],
                               emul(sm, psi[static_cast<std::size_t>(m + 1)], psi[static_cast<std::size_t>(m + 1)]))));
        } else {
            EPoly lhs = emul(sm, psi[static_cast<std::size_t>(m + 2)],
                             emul(sm, psi[static_cast<std::size_t>(m - 1)], psi[static_cast<std::size_t>(m - 1)]));
            EPoly rhs = emul(sm, psi[static_cast<std::size_t>(m - 2)],
                             emul(sm, psi[static_cast<std::size_t>(m + 1)], psi[static_cast<std::size_t>(m + 1)]));
            psi[static_cast<std::size_t>(n)] = div_2y(sm, emul(sm, psi[static_cast<std::size_t>(m)], esub(lhs, rhs)));
        }
    }
    psi.resize(static_cast<std::size_t>(N) + 1);
    return psi;
}

}  // namespace

Poly<Rational> division_poly_legendre(const Rational& t, int N) {
    if (N < 2 || N > 12) throw BudgetExceeded("division polynomials support 2 <= N <= 12");
    LegendreCurve curve(t);
    const ShortModel sm = short_model(t);
    auto psi = division_psis(sm, N);
    // Odd N: psi_N itself (ye = 0). Even N: psi_N = y * h_N; take h_N.
    Poly<Rational> reduced = psi[static_cast<std::size_t>(N)].p;
    // Back to Legendre coordinates: X = x - shift.
    const Poly<Rational> x_shift(std::vector<Rational>{-sm.shift, Rational(1)});
    return substitute(reduced, x_shift);
}

TorsionXSet division_x(const Rational& t, int N, double tol) {
    TorsionXSet out;
    out.N = N;
    out.t = t;
    LegendreCurve curve(t);
    const Poly<Rational> two_torsion = curve.weierstrass();
    Poly<Rational> reduced = division_poly_legendre(t, N);
    if (N % 2 == 0) {
        out.exact = {Rational(0), Rational(1), t};
        out.full_poly = primitive_part(two_torsion * reduced);
    } else {
        out.full_poly = primitive_part(reduced);
    }
    if (reduced.degree() >= 1) {
        RootResult rr = find_roots(reduced, tol);
        if (rr.refinement_failed) throw RootFailure("division polynomial roots failed to certify");
        // Each disk is one x-coordinate; multiplicity bookkeeping stays with
        // the disk (repeated-root x-coordinates do not occur for t off {0,1}).
        out.disks = std::move(rr.disks);
    }
    return out;
}

bool duplication_identity_symbolic() {
    // Over Q[t, x] (t inner, x outer): (x^2 - t)^2 - W'(x)^2 - 4 W(x) (1 + t - 2x)
    // with W(x) = x(x-1)(x-t).
    using P2 = Poly2<Rational>;
    const P2 x = poly2_z<Rational>();
    const P2 t = poly2_c<Rational>();
    const P2 one = poly2_const(Rational(1));
    const P2 W = x * (x - one) * (x - t);
    const P2 Wp = partial_z(W);
    const P2 lhs = (x * x - t) * (x * x - t);
    const P2 rhs = Wp * Wp + poly2_const(Rational(4)) * W * (one + t - x - x);
    return (lhs - rhs).is_zero();
}

DuplicationReport verify_duplication(const Rational& t, int samples, std::uint64_t seed) {
    DuplicationReport rep;
    rep.samples = samples;
    LegendreCurve curve(t);
    const RationalMap<Cx> f = map_to_complex(legendre_lattes(t));
    const Poly<Rational> Wq = curve.weierstrass();
    const Poly<Cx> W = to_complex_poly(Wq);
    const Poly<Cx> Wp = W.derivative();
    const Cx tc(t.get_d(), 0.0);

    std::mt19937_64 rng(mix_seed(seed, 7));
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    for (int s = 0; s < samples; ++s) {
        const Cx x(unif(rng), unif(rng));
        const Cx w = W.eval(x);
        if (std::abs(w) < 1e-8) continue;  // too close to 2-torsion
        const Cx dw = Wp.eval(x);
        const Cx rhs = dw * dw / (4.0 * w) + (Cx(1.0, 0.0) + tc) - 2.0 * x;
        const ProjPoint<Cx> img = f.eval(ProjPoint<Cx>::affine(x));
        const double resid = chordal_distance(img, ProjPoint<Cx>::affine(rhs));
        rep.max_residual = std::max(rep.max_residual, resid);
    }

    // Exact rational spot check away from 2-torsion.
    {
        Rational x(4);
        while (sgn(Wq.eval(x)) == 0) x += 1;
        const RationalMap<Rational> fq = legendre_lattes(t);
        const ProjPoint<Rational> img = fq.eval(ProjPoint<Rational>::affine(x));
        rep.exact_rational_ok = !img.is_infinity() && img.affine_value() == curve.duplicate_x(x);
    }

    // 2-torsion x-coordinates map to the fixed point at infinity.
    {
        const RationalMap<Rational> fq = legendre_lattes(t);
        rep.two_torsion_ok = fq.eval(ProjPoint<Rational>::affine(Rational(0))).is_infinity() &&
                             fq.eval(ProjPoint<Rational>::affine(Rational(1))).is_infinity() &&
                             fq.eval(ProjPoint<Rational>::affine(t)).is_infinity() &&
                             fq.eval(ProjPoint<Rational>::infinity()).is_infinity();
    }
    return rep;
}

TorsionOrbitReport torsion_preperiodicity(const Rational& t, int N, double tol) {
    TorsionOrbitReport rep;
    rep.N = N;
    const TorsionXSet xs = division_x(t, N, std::min(tol, 1e-10));
    const RationalMap<Rational> fq = legendre_lattes(t);
    const RationalMap<Cx> fc = map_to_complex(fq);
    const int budget = 4 * N + 16;

    auto run_exact = [&](const Rational& x) {
        TorsionOrbitEntry e;
        e.exact = true;
        e.x = Cx(x.get_d(), 0.0);
        auto rec = orbit_classify(fq, ProjPoint<Rational>::affine(x), budget);
        e.certified_preperiodic = rec.preperiodic();
        e.preperiod = rec.preperiod;
        e.period = rec.period;
        ProjPoint<Rational> cur = ProjPoint<Rational>::affine(x);
        for (int k = 0; k <= budget; ++k) {
            if (cur.is_infinity()) {
                e.steps_to_infinity = k;
                break;
            }
            cur = fq.eval(cur);
        }
        rep.entries.push_back(e);
    };
    auto run_numeric = [&](const Cx& x) {
        TorsionOrbitEntry e;
        e.x = x;
        auto rec = orbit_classify(fc, ProjPoint<Cx>::affine(x), budget, tol);
        e.certified_preperiodic = rec.preperiodic();
        e.preperiod = rec.preperiod;
        e.period = rec.period;
        ProjPoint<Cx> cur = ProjPoint<Cx>::affine(x);
        for (int k = 0; k <= budget; ++k) {
            if (chordal_distance(cur, ProjPoint<Cx>::infinity()) < tol) {
                e.steps_to_infinity = k;
                break;
            }
            cur = fc.eval(cur);
        }
        rep.entries.push_back(e);
    };

    for (const auto& x : xs.exact) run_exact(x);
    for (const auto& d : xs.disks) run_numeric(d.center);
    rep.all_preperiodic = true;
    for (const auto& e : rep.entries) rep.all_preperiodic &= e.certified_preperiodic;
    return rep;
}

std::vector<RouHit> torsion_vs_rou(const Rational& t, int N_max, int M_max) {
    std::vector<RouHit> hits;
    LegendreCurve curve(t);
    std::map<long long, int> seen;  // quantized root -> minimal m

    for (int N = 2; N <= N_max; ++N) {
        const TorsionXSet xs = division_x(t, N);
        for (int m = 1; m <= M_max; ++m) {
            std::vector<Rational> xm(static_cast<std::size_t>(m) + 1, Rational(0));
            xm[0] = Rational(-1);
            xm.back() = Rational(1);
            const Poly<Rational> cyc(xm);
            Poly<Rational> g = poly_gcd(xs.full_poly, cyc);
            if (g.degree() < 1) continue;
            RootResult rr = find_roots(g, 1e-10);
            for (const auto& disk : rr.disks) {
                const long long key =
                    static_cast<long long>(std::llround(disk.center.real() * 1e8)) * 1000003LL +
                    static_cast<long long>(std::llround(disk.center.imag() * 1e8));
                auto it = seen.find(key);
                if (it != seen.end()) continue;
                seen.emplace(key, m);
                RouHit hit;
                hit.N = N;
                hit.m = m;
                hit.x = disk.center;
                // Rational roots of unity are exactly +-1.
                if (std::abs(disk.center - Cx(1.0, 0.0)) < 1e-9) {
                    hit.exact = true;
                    hit.exact_value = Rational(1);
                } else if (std::abs(disk.center - Cx(-1.0, 0.0)) < 1e-9) {
                    hit.exact = true;
                    hit.exact_value = Rational(-1);
                }
                hits.push_back(hit);
            }
        }
    }
    return hits;
}

}  // namespace p1dyn
