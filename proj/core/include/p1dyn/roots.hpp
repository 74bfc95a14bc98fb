#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "p1dyn/errors.hpp"
#include "p1dyn/poly.hpp"
#include "p1dyn/scalar.hpp"

namespace p1dyn {

using Cx = std::complex<double>;

// A complex disk certified (when `certified`) to contain exactly
// `multiplicity` roots, counted with multiplicity.
struct RootDisk {
    Cx center{0.0, 0.0};
    double radius = 0.0;
    int multiplicity = 1;
    bool certified = false;
};

struct RootResult {
    std::vector<RootDisk> disks;
    bool refinement_failed = false;

    int total_multiplicity() const {
        int t = 0;
        for (const auto& d : disks) t += d.multiplicity;
        return t;
    }
};

// Joint value/derivative of the function driving Newton steps. A common
// positive rescale of both components is allowed (it cancels in value/deriv),
// which is how iterated-map evaluators avoid overflow.
struct EvalPair {
    Cx value{0.0, 0.0};
    Cx deriv{0.0, 0.0};
};

using EvalFn = std::function<EvalPair(Cx)>;
// Certification-grade evaluation: enclosures of |value| and |deriv| under the
// same joint rescale.
struct BallPair {
    CBall value;
    CBall deriv;
};
using BallEvalFn = std::function<BallPair(Cx)>;

// Simultaneous Aberth-Ehrlich iteration from the given initial points,
// followed by Newton polish. Returns the approximants (no certification).
std::vector<Cx> aberth_iterate(const EvalFn& eval, std::vector<Cx> initial, int max_sweeps = 400);

// Initial guesses for a coefficient polynomial (Newton-polygon radii), and a
// generic perturbed-circle fallback used by the functional path.
std::vector<Cx> initial_guesses(const Poly<Cx>& p);
std::vector<Cx> initial_circle(int n, double radius);

// Disk certification for functional evaluators: radius_i = n_roots *
// |F/F'|(x_i) from the ball evaluator; pairwise-disjoint disks then contain
// exactly one root each.
RootResult certify_simple(const std::vector<Cx>& approx, const BallEvalFn& ball, int n_roots, double tol);

// Full pipeline on explicit coefficients (complex): Aberth + Newton +
// certification; overlapping disks are merged into multiplicity clusters and
// flagged as refinement failures when larger than tol.
RootResult find_roots_coeff(const Poly<Cx>& p, double tol);

// Approximants only (initial guesses + Aberth + polish), no certification.
std::vector<Cx> solve_approx(const Poly<Cx>& p);

// Certification for exact rational coefficients: one Newton step and the
// disk radius n|p/p'| are computed in exact Gaussian-rational arithmetic, so
// the bound is immune to the floating cancellation that large coefficients
// cause. Intended for moderate degrees.
RootResult certify_exact_rational(const Poly<Rational>& p, std::vector<Cx> approx, double tol);

// Spec entry point for exact scalar domains: square-free decomposition first
// (multiplicities are exact), then per-factor solving and certification.
template <class K>
RootResult find_roots(const Poly<K>& p, double tol) {
    if (p.is_zero()) throw ZeroPolynomial("roots of the zero polynomial");
    if constexpr (scalar_traits<K>::is_exact) {
        RootResult out;
        auto factors = squarefree_decomposition(p);
        for (std::size_t k = 0; k < factors.size(); ++k) {
            if (factors[k].degree() < 1) continue;
            RootResult part;
            if constexpr (std::is_same_v<K, Rational>) {
                // Exact certification beats floating Horner whenever the
                // coefficients are large; cap the degree to keep the exact
                // arithmetic cheap.
                if (factors[k].degree() <= 128) {
                    part = certify_exact_rational(factors[k], solve_approx(to_complex_poly(factors[k])), tol);
                } else {
                    part = find_roots_coeff(to_complex_poly(factors[k]), tol);
                }
            } else {
                part = find_roots_coeff(to_complex_poly(factors[k]), tol);
            }
            out.refinement_failed |= part.refinement_failed;
            for (auto d : part.disks) {
                d.multiplicity *= static_cast<int>(k + 1);
                out.disks.push_back(d);
            }
        }
        return out;
    } else {
        return find_roots_coeff(to_complex_poly(p), tol);
    }
}

}  // namespace p1dyn
