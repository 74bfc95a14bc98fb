#include "p1dyn/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace p1dyn {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Horner evaluation with the standard running error bound:
// |computed - exact| <= err.
struct HornerEval {
    Cx value;
    Cx deriv;
    double err_value;
    double err_deriv;
};

HornerEval horner_with_error(const Poly<Cx>& p, Cx x) {
    const auto& c = p.coeffs();
    const double ax = std::abs(x);
    const double u = std::numeric_limits<double>::epsilon();
    Cx v{0.0, 0.0}, d{0.0, 0.0};
    double ev = 0.0, ed = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        d = d * x + v;
        ed = ed * ax + std::abs(d) * 2.0 * u + std::abs(v) * u;
        v = v * x + *it;
        ev = ev * ax + std::abs(v) * 2.0 * u + std::abs(*it) * u;
    }
    return {v, d, ev, ed};
}

double magnitude_or_tiny(Cx v) {
    const double m = std::abs(v);
    return m > 0.0 ? m : std::numeric_limits<double>::denorm_min();
}

}  // namespace

std::vector<Cx> initial_circle(int n, double radius) {
    std::vector<Cx> z(static_cast<std::size_t>(n));
    // Irrational angle offset breaks symmetric stalls on symmetric root sets.
    const double offset = 0.3885731229871;
    for (int i = 0; i < n; ++i) {
        const double a = 2.0 * kPi * (static_cast<double>(i) / n + offset) + 0.13 * (i % 3);
        const double r = radius * (1.0 + 0.05 * ((i % 5) - 2) / 5.0);
        z[static_cast<std::size_t>(i)] = Cx(r * std::cos(a), r * std::sin(a));
    }
    return z;
}

// Bini-style initial guesses: the upper convex hull of (i, log|a_i|) splits
// the indices into annuli with radii (|a_k1|/|a_k2|)^(1/(k2-k1)).
std::vector<Cx> initial_guesses(const Poly<Cx>& p) {
    const int n = p.degree();
    std::vector<double> logmag(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        const double m = std::abs(p.coeff(i));
        logmag[static_cast<std::size_t>(i)] = m > 0.0 ? std::log(m) : -1e300;
    }
    // Upper convex hull scan.
    std::vector<int> hull;
    for (int i = 0; i <= n; ++i) {
        if (logmag[static_cast<std::size_t>(i)] <= -1e299 && i != 0 && i != n) continue;
        while (hull.size() >= 2) {
            const int a = hull[hull.size() - 2], b = hull[hull.size() - 1];
            const double cross = (logmag[static_cast<std::size_t>(b)] - logmag[static_cast<std::size_t>(a)]) *
                                     (i - a) -
                                 (logmag[static_cast<std::size_t>(i)] - logmag[static_cast<std::size_t>(a)]) *
                                     (b - a);
            if (cross <= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(i);
    }
    std::vector<Cx> out;
    out.reserve(static_cast<std::size_t>(n));
    const double offset = 0.3885731229871;
    int placed = 0;
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
        const int k1 = hull[s], k2 = hull[s + 1];
        const double r = std::exp((logmag[static_cast<std::size_t>(k1)] - logmag[static_cast<std::size_t>(k2)]) /
                                  (k2 - k1));
        for (int j = 0; j < k2 - k1; ++j) {
            const double a = 2.0 * kPi * (static_cast<double>(j) / (k2 - k1) + offset + 0.01 * s);
            out.push_back(Cx(r * std::cos(a), r * std::sin(a)));
            ++placed;
        }
    }
    while (placed < n) {  // degenerate hull fallback
        out.push_back(initial_circle(n, 1.0)[static_cast<std::size_t>(placed)]);
        ++placed;
    }
    return out;
}

std::vector<Cx> aberth_iterate(const EvalFn& eval, std::vector<Cx> z, int max_sweeps) {
    const int n = static_cast<int>(z.size());
    if (n == 0) return z;
    std::vector<bool> frozen(static_cast<std::size_t>(n), false);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            if (frozen[static_cast<std::size_t>(i)]) continue;
            const EvalPair e = eval(z[static_cast<std::size_t>(i)]);
            if (e.value == Cx(0.0, 0.0)) {
                frozen[static_cast<std::size_t>(i)] = true;
                continue;
            }
            const Cx newton = e.value / (e.deriv == Cx(0.0, 0.0) ? Cx(1e-300, 0.0) : e.deriv);
            Cx rep{0.0, 0.0};
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                const Cx diff = z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
                const double ad = std::abs(diff);
                if (ad > 1e-300) rep += Cx(1.0, 0.0) / diff;
            }
            const Cx denom = Cx(1.0, 0.0) - newton * rep;
            Cx step = (std::abs(denom) > 1e-300) ? newton / denom : newton;
            // Damp wild steps; keeps escaping approximants under control.
            const double limit = 1.0 + std::abs(z[static_cast<std::size_t>(i)]);
            if (std::abs(step) > limit) step *= limit / std::abs(step);
            z[static_cast<std::size_t>(i)] -= step;
            const double rel = std::abs(step) / (1.0 + std::abs(z[static_cast<std::size_t>(i)]));
            worst = std::max(worst, rel);
            if (rel < 4.0 * std::numeric_limits<double>::epsilon()) frozen[static_cast<std::size_t>(i)] = true;
        }
        if (worst < 4.0 * std::numeric_limits<double>::epsilon()) break;
    }
    // Newton polish.
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < 3; ++k) {
            const EvalPair e = eval(z[static_cast<std::size_t>(i)]);
            if (std::abs(e.deriv) < 1e-300) break;
            const Cx step = e.value / e.deriv;
            if (!(std::abs(step) < 1.0)) break;
            z[static_cast<std::size_t>(i)] -= step;
            if (std::abs(step) < 1e-17 * (1.0 + std::abs(z[static_cast<std::size_t>(i)]))) break;
        }
    }
    return z;
}

RootResult certify_simple(const std::vector<Cx>& approx, const BallEvalFn& ball, int n_roots, double tol) {
    RootResult out;
    out.disks.reserve(approx.size());
    for (const Cx& x : approx) {
        const BallPair b = ball(x);
        const double num = std::abs(b.value.center) + b.value.radius;
        const double den = std::abs(b.deriv.center) - b.deriv.radius;
        RootDisk d;
        d.center = x;
        d.multiplicity = 1;
        if (den > 0.0) {
            d.radius = static_cast<double>(n_roots) * num / den;
            d.certified = true;
        } else {
            d.radius = std::numeric_limits<double>::infinity();
            d.certified = false;
        }
        out.disks.push_back(d);
    }
    // Pairwise disjointness upgrades "contains >= 1 root" to "exactly one".
    for (std::size_t i = 0; i < out.disks.size(); ++i) {
        for (std::size_t j = i + 1; j < out.disks.size(); ++j) {
            const double dist = std::abs(out.disks[i].center - out.disks[j].center);
            if (dist <= out.disks[i].radius + out.disks[j].radius) {
                out.disks[i].certified = false;
                out.disks[j].certified = false;
            }
        }
    }
    for (auto& d : out.disks)
        if (!d.certified || d.radius > tol) out.refinement_failed = true;
    return out;
}

std::vector<Cx> solve_approx(const Poly<Cx>& p) {
    std::vector<Cx> c = p.coeffs();
    int zero_mult = 0;
    while (zero_mult < static_cast<int>(c.size()) - 1 && c[static_cast<std::size_t>(zero_mult)] == Cx(0.0, 0.0))
        ++zero_mult;
    if (zero_mult > 0) c.erase(c.begin(), c.begin() + zero_mult);
    Poly<Cx> q{std::move(c)};
    std::vector<Cx> z;
    if (q.degree() > 0) {
        double mx = 0.0;
        for (const auto& a : q.coeffs()) mx = std::max(mx, std::abs(a));
        Poly<Cx> qs = (Cx(1.0 / mx, 0.0)) * q;
        Poly<Cx> dqs = qs.derivative();
        EvalFn eval = [&qs, &dqs](Cx x) -> EvalPair {
            if (std::abs(x) <= 1.0) return {qs.eval(x), dqs.eval(x)};
            const Cx w = Cx(1.0, 0.0) / x;
            Cx acc{0.0, 0.0};
            for (const auto& a : qs.coeffs()) acc = acc * w + a;
            Cx accd{0.0, 0.0};
            for (const auto& a : dqs.coeffs()) accd = accd * w + a;
            return {acc * x, accd};
        };
        z = aberth_iterate(eval, initial_guesses(qs));
    }
    for (int i = 0; i < zero_mult; ++i) z.push_back(Cx(0.0, 0.0));
    return z;
}

namespace {

// Gaussian rational arithmetic for exact residual bounds at double points.
struct QI {
    Rational re, im;
};

QI qi_mul(const QI& a, const QI& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

QI qi_add(const QI& a, const QI& b) { return {a.re + b.re, a.im + b.im}; }

Rational qi_norm(const QI& a) { return a.re * a.re + a.im * a.im; }

QI qi_from(Cx z) {
    QI q;
    q.re = Rational(z.real());
    q.im = Rational(z.imag());
    q.re.canonicalize();
    q.im.canonicalize();
    return q;
}

QI eval_exact(const Poly<Rational>& p, const QI& x) {
    QI acc{Rational(0), Rational(0)};
    for (int i = p.degree(); i >= 0; --i) {
        acc = qi_mul(acc, x);
        acc.re += p.coeff(i);
    }
    return acc;
}

}  // namespace

RootResult certify_exact_rational(const Poly<Rational>& p, std::vector<Cx> approx, double tol) {
    RootResult out;
    const int n = p.degree();
    const Poly<Rational> dp = p.derivative();
    for (Cx& x : approx) {
        // One exact Newton step from the floating approximant, rounded back
        // to double; then an exact disk bound n|p/p'| at the rounded point.
        QI xq = qi_from(x);
        QI v = eval_exact(p, xq);
        QI dv = eval_exact(dp, xq);
        const Rational dnorm = qi_norm(dv);
        if (sgn(dnorm) != 0) {
            // step = v / dv = v * conj(dv) / |dv|^2
            QI step = qi_mul(v, QI{dv.re, -dv.im});
            const Rational sr = step.re / dnorm, si = step.im / dnorm;
            const Cx xs(x.real() - sr.get_d(), x.imag() - si.get_d());
            if (std::isfinite(xs.real()) && std::isfinite(xs.imag())) x = xs;
        }
        xq = qi_from(x);
        v = eval_exact(p, xq);
        dv = eval_exact(dp, xq);
        RootDisk disk;
        disk.center = x;
        disk.multiplicity = 1;
        const double nv = qi_norm(v).get_d();
        const double nd = qi_norm(dv).get_d();
        if (nd > 0.0) {
            disk.radius = static_cast<double>(n) * std::sqrt(nv / nd) * (1.0 + 1e-12);
            disk.certified = true;
        } else {
            disk.radius = std::numeric_limits<double>::infinity();
            disk.certified = false;
        }
        out.disks.push_back(disk);
    }
    for (std::size_t i = 0; i < out.disks.size(); ++i)
        for (std::size_t j = i + 1; j < out.disks.size(); ++j)
            if (std::abs(out.disks[i].center - out.disks[j].center) <=
                out.disks[i].radius + out.disks[j].radius) {
                out.disks[i].certified = false;
                out.disks[j].certified = false;
            }
    for (const auto& d : out.disks)
        if (!d.certified || d.radius > tol) out.refinement_failed = true;
    return out;
}

RootResult find_roots_coeff(const Poly<Cx>& p, double tol) {
    RootResult out;
    if (p.is_zero()) throw ZeroPolynomial("roots of the zero polynomial");
    int n = p.degree();
    if (n == 0) return out;

    // Exact zero roots: strip the x^k factor.
    std::vector<Cx> c = p.coeffs();
    int zero_mult = 0;
    while (zero_mult < static_cast<int>(c.size()) - 1 && c[static_cast<std::size_t>(zero_mult)] == Cx(0.0, 0.0))
        ++zero_mult;
    if (zero_mult > 0) c.erase(c.begin(), c.begin() + zero_mult);
    Poly<Cx> q{std::vector<Cx>(c)};
    n = q.degree();

    std::vector<Cx> z;
    if (n > 0) {
        // Scale coefficients to tame the dynamic range; roots are unchanged.
        double mx = 0.0;
        for (const auto& a : q.coeffs()) mx = std::max(mx, std::abs(a));
        Poly<Cx> qs = (Cx(1.0 / mx, 0.0)) * q;
        Poly<Cx> dqs = qs.derivative();
        EvalFn eval = [&qs, &dqs](Cx x) -> EvalPair {
            if (std::abs(x) <= 1.0) {
                return {qs.eval(x), dqs.eval(x)};
            }
            // Reversed-polynomial evaluation avoids overflow for |x| > 1.
            // Horner in w = 1/x over the coefficients in ascending order
            // gives p(x)/x^n; the joint rescale by x^{n-1} keeps the
            // Newton ratio value/deriv equal to p/p'.
            const Cx w = Cx(1.0, 0.0) / x;
            Cx acc{0.0, 0.0};
            for (const auto& a : qs.coeffs()) acc = acc * w + a;
            Cx accd{0.0, 0.0};
            for (const auto& a : dqs.coeffs()) accd = accd * w + a;
            return {acc * x, accd};
        };
        z = aberth_iterate(eval, initial_guesses(qs));

        BallEvalFn ball = [&qs, &dqs](Cx x) -> BallPair {
            HornerEval h = horner_with_error(qs, x);
            (void)dqs;
            return {CBall(h.value, h.err_value), CBall(h.deriv, h.err_deriv)};
        };
        RootResult cert = certify_simple(z, ball, n, tol);
        out = std::move(cert);
    }

    if (zero_mult > 0) {
        RootDisk zd;
        zd.center = Cx(0.0, 0.0);
        zd.radius = 0.0;
        zd.multiplicity = zero_mult;
        zd.certified = true;
        for (const auto& d : out.disks)
            if (std::abs(d.center) <= d.radius) zd.certified = false;
        out.disks.push_back(zd);
    }

    if (!out.refinement_failed) return out;

    // Cluster overlapping disks into multiplicity groups (union-find).
    const std::size_t m = out.disks.size();
    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const double dist = std::abs(out.disks[i].center - out.disks[j].center);
            if (dist <= out.disks[i].radius + out.disks[j].radius) parent[find(i)] = find(j);
        }
    std::vector<RootDisk> merged;
    std::vector<bool> done(m, false);
    bool failed = false;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t r = find(i);
        if (done[r]) continue;
        done[r] = true;
        Cx centroid{0.0, 0.0};
        int mult = 0, count = 0;
        for (std::size_t j = 0; j < m; ++j)
            if (find(j) == r) {
                centroid += out.disks[j].center * static_cast<double>(out.disks[j].multiplicity);
                mult += out.disks[j].multiplicity;
                ++count;
            }
        centroid /= static_cast<double>(mult);
        double radius = 0.0;
        for (std::size_t j = 0; j < m; ++j)
            if (find(j) == r)
                radius = std::max(radius, std::abs(out.disks[j].center - centroid) + out.disks[j].radius);
        RootDisk d;
        d.center = centroid;
        d.radius = radius;
        d.multiplicity = mult;
        // Merged clusters are best-effort only; exact domains resolve true
        // multiplicities through the square-free path instead.
        d.certified = count == 1 && out.disks[i].certified && radius <= tol;
        if (!d.certified) failed = true;
        merged.push_back(d);
    }
    // Re-check disjointness of the merged system.
    for (std::size_t i = 0; i < merged.size(); ++i)
        for (std::size_t j = i + 1; j < merged.size(); ++j)
            if (std::abs(merged[i].center - merged[j].center) <= merged[i].radius + merged[j].radius) {
                merged[i].certified = merged[j].certified = false;
                failed = true;
            }
    out.disks = std::move(merged);
    out.refinement_failed = failed;
    return out;
}

}  // namespace p1dyn
