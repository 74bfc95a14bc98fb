#pragma once

#include <optional>
#include <string>
#include <vector>

#include "p1dyn/errors.hpp"
#include "p1dyn/family.hpp"
#include "p1dyn/matrix.hpp"
#include "p1dyn/orbit.hpp"
#include "p1dyn/poly2.hpp"
#include "p1dyn/preper.hpp"

namespace p1dyn {

// One branch of a marked common preperiodic point: the defining polynomial
// P(param, z) whose local solution z(param) tracks the point, and the index
// of the parameter it depends on (-1 when the branch is parameter-free).
struct BranchDef {
    int param = -1;
    Poly2<Rational> poly;                 // in (param, z)
    std::optional<std::pair<int, int>> cls;  // (preperiod, period), informational
};

struct RepellerPoint {
    Rational z0;
    BranchDef f_branch;
    BranchDef g_branch;
};

struct RepellerCertificate {
    std::vector<Rational> base;
    std::vector<RepellerPoint> points;
    Matrix<Rational> reduced;
    Matrix<Rational> bordered;
    Rational reduced_det{0};
    Rational bordered_det{0};
    std::string verdict;  // "rigid" | "degenerate" | "singular-configuration"
    std::vector<OrbitSummary> f_orbits, g_orbits;
};

namespace detail {

inline Rational branch_derivative(const BranchDef& b, const std::vector<Rational>& s0, const Rational& z0, int j) {
    if (b.param != j) return Rational(0);
    return implicit_derivative(b.poly, s0[static_cast<std::size_t>(j)], z0);
}

}  // namespace detail

// The m x m matrix of implicit derivatives: entry (i, j) is the derivative of
// point i with respect to parameter j, taken along whichever branch (f or g)
// that parameter drives. For the two-parameter quadratic pair this is the
// paper's [[p1a', p1b'], [p2a', p2b']] layout.
inline Matrix<Rational> repeller_jacobian(const std::vector<RepellerPoint>& points,
                                          const std::vector<Rational>& s0) {
    const std::size_t m = s0.size();
    if (points.size() != m) throw DomainMismatch("need exactly one marked point per parameter");
    Matrix<Rational> out(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const int jj = static_cast<int>(j);
            const bool from_f = points[i].f_branch.param == jj;
            const bool from_g = points[i].g_branch.param == jj;
            if (from_f && from_g)
                throw DomainMismatch("parameter drives both branches; layout is ambiguous");
            if (from_f)
                out(i, j) = detail::branch_derivative(points[i].f_branch, s0, points[i].z0, jj);
            else if (from_g)
                out(i, j) = detail::branch_derivative(points[i].g_branch, s0, points[i].z0, jj);
        }
    }
    return out;
}

// Full bordered matrix in the paper's layout. Rows: the m parameters, then
// per point i the two fiber coordinates (f copy, g copy). Columns: the m
// parameter directions, the m diagonal directions, and the m graph tangent
// directions of the marked family.
inline Matrix<Rational> bordered_matrix(const std::vector<RepellerPoint>& points, const std::vector<Rational>& s0) {
    const std::size_t m = s0.size();
    if (points.size() != m) throw DomainMismatch("need exactly one marked point per parameter");
    Matrix<Rational> out(3 * m, 3 * m);
    for (std::size_t j = 0; j < m; ++j) {
        out(j, j) = Rational(1);           // parameter basis
        out(j, 2 * m + j) = Rational(1);   // graph tangent has the same s-component
    }
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t row_f = m + 2 * i;
        const std::size_t row_g = m + 2 * i + 1;
        out(row_f, m + i) = Rational(1);  // diagonal direction at point i
        out(row_g, m + i) = Rational(1);
        for (std::size_t j = 0; j < m; ++j) {
            out(row_f, 2 * m + j) = detail::branch_derivative(points[i].f_branch, s0, points[i].z0, static_cast<int>(j));
            out(row_g, 2 * m + j) = detail::branch_derivative(points[i].g_branch, s0, points[i].z0, static_cast<int>(j));
        }
    }
    return out;
}

inline Rational bordered_determinant(const std::vector<RepellerPoint>& points, const std::vector<Rational>& s0) {
    return det_bareiss(bordered_matrix(points, s0));
}

// Certify the transverse (hence rigid) configuration: each point must be
// preperiodic to a repelling cycle for both specialized maps, sit on both
// defining curves, and the implicit-derivative determinant must be exactly
// nonzero. Transversality is stronger than rigidity as defined by the
// holomorphic-disk condition, and it is the decidable side.
inline RepellerCertificate certify_rigid_repeller(const ParamFamily& f, const ParamFamily& g,
                                                  const std::vector<Rational>& s0,
                                                  const std::vector<RepellerPoint>& points, int orbit_budget = 64) {
    RepellerCertificate cert;
    cert.base = s0;
    cert.points = points;

    const RationalMap<Rational> fs = f.specialize(s0);
    const RationalMap<Rational> gs = g.specialize(s0);
    for (const auto& pt : points) {
        auto check = [&](const RationalMap<Rational>& map, std::vector<OrbitSummary>& sink, const char* which) {
            auto rec = orbit_classify(map, ProjPoint<Rational>::affine(pt.z0), orbit_budget);
            if (!rec.preperiodic())
                throw NotRepelling(std::string("point is not preperiodic for ") + which + " within budget");
            if (rec.cls != CycleClass::repelling)
                throw NotRepelling(std::string("point is not pre-repelling for ") + which);
            sink.push_back(summarize(rec));
        };
        check(fs, cert.f_orbits, "f");
        check(gs, cert.g_orbits, "g");
    }

    try {
        cert.reduced = repeller_jacobian(points, s0);
        cert.bordered = bordered_matrix(points, s0);
        cert.reduced_det = det_bareiss(cert.reduced);
        cert.bordered_det = det_bareiss(cert.bordered);
        cert.verdict = sgn(cert.reduced_det) != 0 ? "rigid" : "degenerate";
    } catch (const SingularPoint&) {
        cert.verdict = "singular-configuration";
    }
    return cert;
}

}  // namespace p1dyn
