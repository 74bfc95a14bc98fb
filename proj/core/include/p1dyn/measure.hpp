#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "p1dyn/family.hpp"
#include "p1dyn/map.hpp"
#include "p1dyn/poly2.hpp"
#include "p1dyn/preper.hpp"
#include "p1dyn/roots.hpp"

namespace p1dyn {

// Weighted finite set of projective points approximating a measure.
struct WeightedPoint {
    Cx z{0.0, 0.0};
    bool at_infinity = false;
    double weight = 1.0;
};

struct PointCloud {
    std::vector<WeightedPoint> points;
    double total_weight = 0.0;

    void recompute_total() {
        total_weight = 0.0;
        for (const auto& p : points) total_weight += p.weight;
    }

    void normalize() {
        recompute_total();
        if (total_weight <= 0.0) return;
        for (auto& p : points) p.weight /= total_weight;
        total_weight = 1.0;
    }
};

// Deterministic substream derivation (splitmix-style).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

struct GreenValue {
    double value = 0.0;
    double error_estimate = 0.0;  // C * d^{-iters} / (d - 1) with measured C
};

// Escape-rate potential of the homogeneous lift with sup-norm renormalization
// per step, evaluated on the representative (z : 1) (or (1 : 0)). The value
// telescopes as log max(|X|,|Z|) + sum d^{-k} log r_k.
GreenValue green_value(const RationalMap<Cx>& f, const ProjPoint<Cx>& z, int iters);

template <class K>
GreenValue green_value(const RationalMap<K>& f, const ProjPoint<K>& z, int iters) {
    const RationalMap<Cx> fc = map_to_complex(f);
    const ProjPoint<Cx> zc = z.is_infinity()
                                 ? ProjPoint<Cx>::infinity()
                                 : ProjPoint<Cx>::affine(scalar_traits<K>::to_complex(z.affine_value()));
    return green_value(fc, zc, iters);
}

// Random backward-orbit sampling of the maximal-entropy measure: from a
// non-exceptional base point, repeatedly pick a uniform random d-preimage.
PointCloud sample_mu(const RationalMap<Cx>& f, int depth, int samples, std::uint64_t seed,
                     std::optional<Cx> base = std::nullopt);

template <class K>
PointCloud sample_mu(const RationalMap<K>& f, int depth, int samples, std::uint64_t seed,
                     std::optional<Cx> base = std::nullopt) {
    return sample_mu(map_to_complex(f), depth, samples, seed, base);
}

// Atoms at the solutions of f^n(z) = f^m(z) with multiplicity, each of
// weight d^{-n}; infinity carries the homogeneous multiplicity.
template <class K>
PointCloud preperiodic_cloud(const RationalMap<K>& f, int n, int m, long root_budget = 1 << 17) {
    const PreperSpec spec(n, m);
    const int d = f.degree();
    const long total = detail::ipow(d, n) + detail::ipow(d, m);
    if (total > root_budget + root_budget) throw BudgetExceeded("preperiodic cloud exceeds root budget");
    const double w = 1.0 / static_cast<double>(detail::ipow(d, n));
    PointCloud cloud;
    long affine_mult = 0;

    const bool polynomial_map = f.den().degree() == 0;
    if (polynomial_map && total > 24) {
        auto hc = detail::to_homog<Cx>(f);
        auto hb = detail::to_homog<CBall>(f);
        const int n_aff = static_cast<int>(detail::ipow(d, n));
        double coef_sum = 0.0;
        for (int i = 0; i < f.num().degree(); ++i)
            coef_sum += std::abs(scalar_traits<K>::to_complex(f.num().coeff(i)));
        const double radius_hint = 1.0 + std::max(1.0, coef_sum);
        EvalFn eval = [&hc, n, m](Cx z) -> EvalPair {
            const Dual<Cx> c = detail::preper_cross(hc, n, m, z);
            return {c.value, c.deriv};
        };
        BallEvalFn ball = [&hb, n, m](Cx z) -> BallPair {
            const Dual<CBall> c = detail::preper_cross(hb, n, m, z);
            return {c.value, c.deriv};
        };
        std::vector<Cx> approx = aberth_iterate(eval, initial_circle(n_aff, radius_hint));
        RootResult rr = certify_simple(approx, ball, n_aff, 1e-8);
        for (const auto& disk : rr.disks) {
            cloud.points.push_back({disk.center, false, w * disk.multiplicity});
            affine_mult += disk.multiplicity;
        }
    } else {
        Poly<K> H = preperiodic_equation(f, spec, root_budget);
        RootResult rr = find_roots(H, 1e-10);
        for (const auto& disk : rr.disks) {
            cloud.points.push_back({disk.center, false, w * disk.multiplicity});
            affine_mult += disk.multiplicity;
        }
    }
    const long inf_mult = total - affine_mult;
    if (inf_mult > 0) cloud.points.push_back({Cx(0.0, 0.0), true, w * static_cast<double>(inf_mult)});
    cloud.recompute_total();
    return cloud;
}

// Uniform unit-circle reference measure.
PointCloud circle_cloud(int count);

// Total-variation distance between the clouds binned on an equal-area
// spherical grid (resolution bands x resolution sectors); symmetric, in
// [0, 1], zero iff the binned masses agree.
double discrepancy(const PointCloud& a, const PointCloud& b, int resolution);

// ---------------------------------------------------------------------------
// Parameter grids.

struct GridWindow {
    double re0 = -2.0, re1 = 2.0;
    double im0 = -2.0, im1 = 2.0;
};

struct ParamGrid {
    GridWindow window;
    int nx = 0, ny = 0;
    double dx = 0.0, dy = 0.0;
    std::vector<double> value;       // row-major, ny rows of nx
    std::vector<double> laplacian;   // five-point stencil of value
    std::vector<std::uint8_t> flag;  // nonzero marks unusable cells

    Cx cell_center(int ix, int iy) const {
        return Cx(window.re0 + (ix + 0.5) * dx, window.im0 + (iy + 0.5) * dy);
    }
    std::size_t index(int ix, int iy) const {
        return static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(ix);
    }
};

// Marked point over a 1-parameter family: an explicit polynomial t -> a(t),
// or a branch of an algebraic curve P(t, z) = 0 continued from a seed.
struct MarkedPoint {
    std::optional<Poly<Rational>> poly;
    struct Branch {
        Poly2<Rational> curve;
        Cx seed{0.0, 0.0};
    };
    std::optional<Branch> branch;
};

// Grid of t -> G_{f_t}(a(t)) plus its discrete Laplacian (the density proxy
// of the marked-point bifurcation current). Degenerate or failed cells are
// flagged, never fatal.
ParamGrid marked_point_grid(const ParamFamily& f, const MarkedPoint& marked, const GridWindow& window, int resolution,
                            int iters);

// Pairwise slice: per cell, the mutual potential H(t) = average of
// G_{f_t} over a sampled mu_{g_t} cloud, and its Laplacian.
ParamGrid pairwise_slice(const ParamFamily& f, const ParamFamily& g, const GridWindow& window, int resolution,
                         int depth, int samples, std::uint64_t seed, int iters, int threads = 1);

}  // namespace p1dyn
