#include "p1dyn/measure.hpp"

#include <cmath>
#include <random>
#include <thread>

namespace p1dyn {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

GreenValue green_value(const RationalMap<Cx>& f, const ProjPoint<Cx>& z, int iters) {
    const int d = f.degree();
    Cx X = z.x(), Z = z.z();
    double g = 0.0;
    {
        const double m = std::max(std::abs(X), std::abs(Z));
        g = std::log(m);
        X /= m;
        Z /= m;
    }
    double scale = 1.0;  // d^{-k}
    double worst_log = 0.0;
    for (int k = 1; k <= iters; ++k) {
        const ProjPoint<Cx> img = f.eval(ProjPoint<Cx>(X, Z));
        // eval renormalizes so the larger coordinate is 1; recover the true
        // stretching factor by evaluating the homogeneous forms directly.
        Cx nx(0.0, 0.0), dz(0.0, 0.0);
        {
            // Horner on the homogenized pair at (X, Z).
            const auto& num = f.num();
            const auto& den = f.den();
            Cx xp(1.0, 0.0);
            std::vector<Cx> zp(static_cast<std::size_t>(d) + 1);
            zp[0] = Cx(1.0, 0.0);
            for (int i = 1; i <= d; ++i) zp[static_cast<std::size_t>(i)] = zp[static_cast<std::size_t>(i - 1)] * Z;
            for (int i = 0; i <= d; ++i) {
                const Cx mono = xp * zp[static_cast<std::size_t>(d - i)];
                nx += num.coeff(i) * mono;
                dz += den.coeff(i) * mono;
                xp *= X;
            }
        }
        const double r = std::max(std::abs(nx), std::abs(dz));
        if (!(r > 0.0)) break;  // degenerate direction; value saturates
        scale /= d;
        g += scale * std::log(r);
        worst_log = std::max(worst_log, std::abs(std::log(r)));
        X = nx / r;
        Z = dz / r;
        (void)img;
    }
    GreenValue out;
    out.value = g;
    out.error_estimate = worst_log * scale / (d - 1);
    return out;
}

PointCloud sample_mu(const RationalMap<Cx>& f, int depth, int samples, std::uint64_t seed, std::optional<Cx> base) {
    const int d = f.degree();
    const Cx z0 = base.value_or(Cx(0.5372859218, 1.2371832));
    PointCloud cloud;
    cloud.points.reserve(static_cast<std::size_t>(samples));
    const double w = 1.0 / static_cast<double>(samples);

    for (int s = 0; s < samples; ++s) {
        std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(s)));
        ProjPoint<Cx> cur = ProjPoint<Cx>::affine(z0);
        for (int step = 0; step < depth; ++step) {
            // Solve f(w) = cur: Z_t * N(w) - X_t * D(w) = 0; degree drop
            // accounts for preimages at infinity.
            Poly<Cx> target = cur.z() * f.num() - cur.x() * f.den();
            std::vector<std::pair<Cx, bool>> choices;  // (value, at_infinity)
            if (!target.is_zero()) {
                RootResult rr = find_roots_coeff(target, 1e-8);
                for (const auto& disk : rr.disks)
                    for (int i = 0; i < disk.multiplicity; ++i) choices.push_back({disk.center, false});
            }
            while (static_cast<int>(choices.size()) < d) choices.push_back({Cx(0.0, 0.0), true});
            const std::size_t pick = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(d));
            cur = choices[pick].second ? ProjPoint<Cx>::infinity() : ProjPoint<Cx>::affine(choices[pick].first);
        }
        if (cur.is_infinity())
            cloud.points.push_back({Cx(0.0, 0.0), true, w});
        else
            cloud.points.push_back({cur.to_complex(), false, w});
    }
    cloud.recompute_total();
    return cloud;
}

PointCloud circle_cloud(int count) {
    PointCloud cloud;
    cloud.points.reserve(static_cast<std::size_t>(count));
    const double w = 1.0 / count;
    for (int i = 0; i < count; ++i) {
        const double a = 2.0 * 3.14159265358979323846 * (i + 0.5) / count;
        cloud.points.push_back({Cx(std::cos(a), std::sin(a)), false, w});
    }
    cloud.total_weight = 1.0;
    return cloud;
}

namespace {

// Equal-area spherical bin: band by s = (|z|^2 - 1) / (|z|^2 + 1), sector by
// argument. Infinity lands in the top band.
std::size_t sphere_bin(const WeightedPoint& p, int res) {
    double s, theta;
    if (p.at_infinity) {
        s = 1.0;
        theta = 0.0;
    } else {
        const double n2 = std::norm(p.z);
        s = (n2 - 1.0) / (n2 + 1.0);
        theta = std::atan2(p.z.imag(), p.z.real());
    }
    int band = static_cast<int>((s + 1.0) * 0.5 * res);
    band = std::min(std::max(band, 0), res - 1);
    double frac = theta / (2.0 * 3.14159265358979323846) + 0.5;
    int sector = static_cast<int>(frac * res);
    sector = std::min(std::max(sector, 0), res - 1);
    return static_cast<std::size_t>(band) * static_cast<std::size_t>(res) + static_cast<std::size_t>(sector);
}

}  // namespace

double discrepancy(const PointCloud& a, const PointCloud& b, int resolution) {
    if (a.points.empty() || b.points.empty()) throw DomainMismatch("discrepancy of an empty cloud");
    std::vector<double> ma(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution), 0.0);
    std::vector<double> mb(ma.size(), 0.0);
    double ta = 0.0, tb = 0.0;
    for (const auto& p : a.points) {
        ma[sphere_bin(p, resolution)] += p.weight;
        ta += p.weight;
    }
    for (const auto& p : b.points) {
        mb[sphere_bin(p, resolution)] += p.weight;
        tb += p.weight;
    }
    double tv = 0.0;
    for (std::size_t i = 0; i < ma.size(); ++i) tv += std::abs(ma[i] / ta - mb[i] / tb);
    return 0.5 * tv;
}

namespace {

void fill_laplacian(ParamGrid& grid) {
    grid.laplacian.assign(grid.value.size(), 0.0);
    for (int iy = 0; iy < grid.ny; ++iy) {
        for (int ix = 0; ix < grid.nx; ++ix) {
            const std::size_t c = grid.index(ix, iy);
            if (ix == 0 || iy == 0 || ix == grid.nx - 1 || iy == grid.ny - 1) {
                grid.flag[c] |= 2;  // boundary: no stencil
                continue;
            }
            const std::size_t l = grid.index(ix - 1, iy), r = grid.index(ix + 1, iy);
            const std::size_t u = grid.index(ix, iy + 1), d = grid.index(ix, iy - 1);
            if (grid.flag[c] & 1 || grid.flag[l] & 1 || grid.flag[r] & 1 || grid.flag[u] & 1 || grid.flag[d] & 1) {
                grid.flag[c] |= 2;
                continue;
            }
            grid.laplacian[c] = (grid.value[l] + grid.value[r] - 2.0 * grid.value[c]) / (grid.dx * grid.dx) +
                                (grid.value[u] + grid.value[d] - 2.0 * grid.value[c]) / (grid.dy * grid.dy);
        }
    }
}

ParamGrid make_grid(const GridWindow& window, int resolution) {
    ParamGrid grid;
    grid.window = window;
    grid.nx = resolution;
    grid.ny = resolution;
    grid.dx = (window.re1 - window.re0) / resolution;
    grid.dy = (window.im1 - window.im0) / resolution;
    grid.value.assign(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution), 0.0);
    grid.flag.assign(grid.value.size(), 0);
    return grid;
}

}  // namespace

ParamGrid marked_point_grid(const ParamFamily& f, const MarkedPoint& marked, const GridWindow& window, int resolution,
                            int iters) {
    if (f.nparams != 1) throw DomainMismatch("marked-point grids need a 1-parameter family");
    ParamGrid grid = make_grid(window, resolution);

    // Branch continuation state: previous column of marked values, swept in
    // row-major order with each row seeded from the cell below.
    std::vector<Cx> prev_row(static_cast<std::size_t>(resolution), Cx(0.0, 0.0));
    std::vector<bool> prev_ok(static_cast<std::size_t>(resolution), false);

    Poly<Cx> marked_poly;
    if (marked.poly) marked_poly = to_complex_poly(*marked.poly);

    for (int iy = 0; iy < grid.ny; ++iy) {
        Cx left_val;
        bool left_ok = false;
        for (int ix = 0; ix < grid.nx; ++ix) {
            const std::size_t c = grid.index(ix, iy);
            const Cx t = grid.cell_center(ix, iy);
            Cx a;
            bool ok = true;
            if (marked.poly) {
                a = marked_poly.eval(t);
            } else if (marked.branch) {
                // Newton on P(t, .) from the nearest continued neighbor.
                Cx seed = marked.branch->seed;
                if (left_ok)
                    seed = left_val;
                else if (prev_ok[static_cast<std::size_t>(ix)])
                    seed = prev_row[static_cast<std::size_t>(ix)];
                const Poly2<Rational>& curve = marked.branch->curve;
                Poly<Cx> pc, dpc;
                {
                    std::vector<Cx> cc, dd;
                    for (int i = 0; i <= curve.degree(); ++i) cc.push_back(to_complex_poly(curve.coeff(i)).eval(t));
                    pc = Poly<Cx>(cc);
                    dpc = pc.derivative();
                }
                Cx x = seed;
                ok = false;
                for (int it = 0; it < 50; ++it) {
                    const Cx v = pc.eval(x);
                    const Cx dv = dpc.eval(x);
                    if (std::abs(dv) < 1e-14) break;
                    const Cx step = v / dv;
                    x -= step;
                    if (std::abs(step) < 1e-12 * (1.0 + std::abs(x))) {
                        ok = true;
                        break;
                    }
                }
                a = x;
            } else {
                throw DomainMismatch("marked point needs a polynomial or a branch");
            }

            double value = 0.0;
            if (ok) {
                try {
                    const RationalMap<Cx> ft = f.specialize(std::vector<Cx>{t});
                    value = green_value(ft, ProjPoint<Cx>::affine(a), iters).value;
                } catch (const DegenerateMap&) {
                    ok = false;
                }
            }
            grid.value[c] = ok ? value : 0.0;
            if (!ok) grid.flag[c] |= 1;
            left_val = a;
            left_ok = ok;
            prev_row[static_cast<std::size_t>(ix)] = a;
            prev_ok[static_cast<std::size_t>(ix)] = ok;
        }
    }
    fill_laplacian(grid);
    return grid;
}

ParamGrid pairwise_slice(const ParamFamily& f, const ParamFamily& g, const GridWindow& window, int resolution,
                         int depth, int samples, std::uint64_t seed, int iters, int threads) {
    if (f.nparams != 1 || g.nparams != 1) throw DomainMismatch("pairwise slices need 1-parameter families");
    ParamGrid grid = make_grid(window, resolution);

    auto run_cell = [&](int iy, int ix) {
        const std::size_t c = grid.index(ix, iy);
        const Cx t = grid.cell_center(ix, iy);
        try {
            const RationalMap<Cx> ft = f.specialize(std::vector<Cx>{t});
            const RationalMap<Cx> gt = g.specialize(std::vector<Cx>{t});
            const PointCloud cloud = sample_mu(gt, depth, samples, mix_seed(seed, c));
            double acc = 0.0, wsum = 0.0;
            for (const auto& p : cloud.points) {
                const ProjPoint<Cx> z = p.at_infinity ? ProjPoint<Cx>::infinity() : ProjPoint<Cx>::affine(p.z);
                acc += p.weight * green_value(ft, z, iters).value;
                wsum += p.weight;
            }
            grid.value[c] = wsum > 0.0 ? acc / wsum : 0.0;
        } catch (const DegenerateMap&) {
            grid.flag[c] |= 1;
        } catch (const RootFailure&) {
            grid.flag[c] |= 1;
        }
    };

    if (threads <= 1) {
        for (int iy = 0; iy < grid.ny; ++iy)
            for (int ix = 0; ix < grid.nx; ++ix) run_cell(iy, ix);
    } else {
        std::vector<std::thread> pool;
        const int total = grid.nx * grid.ny;
        const int chunk = (total + threads - 1) / threads;
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&, w]() {
                const int lo = w * chunk, hi = std::min(total, lo + chunk);
                for (int c = lo; c < hi; ++c) run_cell(c / grid.nx, c % grid.nx);
            });
        }
        for (auto& th : pool) th.join();
    }
    fill_laplacian(grid);
    return grid;
}

}  // namespace p1dyn
