#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "p1dyn/errors.hpp"
#include "p1dyn/map.hpp"
#include "p1dyn/proj.hpp"

namespace p1dyn {

enum class CycleClass { repelling, attracting, indifferent, superattracting };
enum class OrbitStatus { certified_exact, numeric, inconclusive };

inline const char* cycle_class_name(CycleClass c) {
    switch (c) {
        case CycleClass::repelling: return "repelling";
        case CycleClass::attracting: return "attracting";
        case CycleClass::indifferent: return "indifferent";
        case CycleClass::superattracting: return "superattracting";
    }
    return "?";
}

inline const char* orbit_status_name(OrbitStatus s) {
    switch (s) {
        case OrbitStatus::certified_exact: return "certified-exact";
        case OrbitStatus::numeric: return "numeric";
        case OrbitStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

template <class K>
struct OrbitRecord {
    int preperiod = 0;
    int period = 0;
    std::vector<ProjPoint<K>> cycle;
    K multiplier = scalar_traits<K>::zero();
    CycleClass cls = CycleClass::superattracting;
    OrbitStatus status = OrbitStatus::inconclusive;
    std::string witness;  // diagnostics when inconclusive

    bool preperiodic() const { return status != OrbitStatus::inconclusive; }
};

// Multiplier of a verified cycle: the derivative product in a chart avoiding
// infinity. The affine chart is used when possible, then the 1/z chart, then
// 1/(z-a) for the first integer a off the cycle; the value is chart-free.
template <class K>
K multiplier(const RationalMap<K>& f, const std::vector<ProjPoint<K>>& cycle, double tol = 1e-9) {
    if (cycle.empty()) throw NotACycle("empty cycle");
    const std::size_t p = cycle.size();
    for (std::size_t i = 0; i < p; ++i) {
        const ProjPoint<K> img = f.eval(cycle[i]);
        const ProjPoint<K>& want = cycle[(i + 1) % p];
        bool ok;
        if constexpr (scalar_traits<K>::is_exact)
            ok = (img == want);
        else
            ok = chordal_distance(img, want) <= tol;
        if (!ok) throw NotACycle("points do not form a cycle of the map");
    }

    bool has_infinity = false;
    for (const auto& z : cycle) has_infinity |= z.is_infinity();
    if (!has_infinity) {
        K acc = scalar_traits<K>::one();
        for (const auto& z : cycle) acc = acc * f.derivative_affine(z.affine_value());
        return acc;
    }

    // Conjugate by A(z) = 1/(z - a) with a off the cycle; a = 0 is plain 1/z.
    for (long a = 0; a < 64; ++a) {
        const K av = scalar_traits<K>::from_int(a);
        bool clash = false;
        for (const auto& z : cycle) {
            if (z.is_infinity()) continue;
            if constexpr (scalar_traits<K>::is_exact)
                clash |= scalar_traits<K>::is_zero(z.affine_value() - av);
            else
                clash |= std::abs(scalar_traits<K>::to_complex(z.affine_value()) -
                                  scalar_traits<K>::to_complex(av)) < 1e-6;
        }
        if (clash) continue;
        const Mobius<K> A(scalar_traits<K>::zero(), scalar_traits<K>::one(), scalar_traits<K>::one(), -av);
        const RationalMap<K> g = conjugate(f, A);
        K acc = scalar_traits<K>::one();
        for (const auto& z : cycle) acc = acc * g.derivative_affine(A.apply(z).affine_value());
        return acc;
    }
    throw NotACycle("no chart found avoiding the cycle");
}

namespace detail {

template <class K>
void classify_exact(OrbitRecord<K>& rec) {
    rec.status = OrbitStatus::certified_exact;
    if constexpr (std::is_same_v<K, Rational>) {
        if (sgn(rec.multiplier) == 0)
            rec.cls = CycleClass::superattracting;
        else if (abs_greater_one(rec.multiplier))
            rec.cls = CycleClass::repelling;
        else if (cmp(abs(rec.multiplier), 1) == 0)
            rec.cls = CycleClass::indifferent;
        else
            rec.cls = CycleClass::attracting;
    } else {
        // Cyclotomic multiplier: |m|^2 - 1 is an exact field element whose
        // vanishing is decidable; its sign is read off numerically with a
        // margin, degrading the status to numeric when too close to call.
        const Cyclo& m = rec.multiplier;
        if (m.is_zero()) {
            rec.cls = CycleClass::superattracting;
            return;
        }
        if (m.is_rational()) {
            const Rational v = m.rational_value();
            if (abs_greater_one(v))
                rec.cls = CycleClass::repelling;
            else if (cmp(abs(v), 1) == 0)
                rec.cls = CycleClass::indifferent;
            else
                rec.cls = CycleClass::attracting;
            return;
        }
        const Cyclo dev = m * m.conj() - Cyclo(Rational(1));
        if (dev.is_zero()) {
            rec.cls = CycleClass::indifferent;
            return;
        }
        const double s = dev.to_complex().real();
        rec.cls = s > 0 ? CycleClass::repelling : CycleClass::attracting;
        if (std::abs(s) < 1e-9) rec.status = OrbitStatus::numeric;
    }
}

inline int mpz_bits(const mpz_class& z) { return static_cast<int>(mpz_sizeinbase(z.get_mpz_t(), 2)); }

template <class K>
int point_bits(const ProjPoint<K>& p) {
    if (p.is_infinity()) return 0;
    if constexpr (std::is_same_v<K, Rational>) {
        return std::max(mpz_bits(p.affine_value().get_num()), mpz_bits(p.affine_value().get_den()));
    } else if constexpr (std::is_same_v<K, Cyclo>) {
        int b = 0;
        for (const auto& c : p.affine_value().coords())
            b = std::max({b, mpz_bits(c.get_num()), mpz_bits(c.get_den())});
        return b;
    } else {
        return 0;
    }
}

template <class K>
std::string growth_witness(const std::vector<ProjPoint<K>>& orbit) {
    std::ostringstream os;
    if constexpr (std::is_same_v<K, Rational>) {
        int first = 0, last = 0;
        for (const auto& p : orbit) {
            if (p.is_infinity()) continue;
            const int b = mpz_bits(p.affine_value().get_den());
            if (!first) first = b;
            last = b;
        }
        os << "denominator grew from " << first << " to " << last << " bits over " << orbit.size() << " steps";
    } else {
        os << "no revisit within " << orbit.size() << " steps";
    }
    return os.str();
}

}  // namespace detail

// Forward-orbit classification. Exact domains iterate exactly and detect a
// revisit by hashing canonical points; the floating domain detects a revisit
// within tol in the chordal metric. Budget exhaustion is a status, not an
// error: non-preperiodic starting points are the generic case.
template <class K>
OrbitRecord<K> orbit_classify(const RationalMap<K>& f, const ProjPoint<K>& z, int max_steps, double tol = 1e-9,
                              int max_coeff_bits = 1 << 15) {
    OrbitRecord<K> rec;
    std::vector<ProjPoint<K>> orbit;
    orbit.reserve(static_cast<std::size_t>(max_steps) + 1);

    int first = -1, again = -1;
    if constexpr (scalar_traits<K>::is_exact) {
        std::unordered_map<ProjPoint<K>, int, ProjPointHash<K>> seen;
        ProjPoint<K> cur = z;
        for (int step = 0; step <= max_steps; ++step) {
            auto it = seen.find(cur);
            if (it != seen.end()) {
                first = it->second;
                again = step;
                break;
            }
            seen.emplace(cur, step);
            orbit.push_back(cur);
            // Denominators of non-preperiodic rational points blow up doubly
            // exponentially; bail early once they pass the cap.
            if (detail::point_bits(cur) > max_coeff_bits) {
                orbit.push_back(f.eval(cur));
                break;
            }
            cur = f.eval(cur);
        }
    } else {
        ProjPoint<K> cur = z;
        for (int step = 0; step <= max_steps && again < 0; ++step) {
            for (std::size_t i = 0; i < orbit.size(); ++i) {
                if (chordal_distance(orbit[i], cur) <= tol) {
                    first = static_cast<int>(i);
                    again = step;
                    break;
                }
            }
            if (again < 0) {
                orbit.push_back(cur);
                cur = f.eval(cur);
            }
        }
    }

    if (again < 0) {
        rec.status = OrbitStatus::inconclusive;
        rec.witness = detail::growth_witness(orbit);
        return rec;
    }

    rec.preperiod = first;
    rec.period = again - first;
    rec.cycle.assign(orbit.begin() + first, orbit.begin() + again);
    rec.multiplier = multiplier(f, rec.cycle, tol);
    if constexpr (scalar_traits<K>::is_exact) {
        detail::classify_exact(rec);
    } else {
        rec.status = OrbitStatus::numeric;
        const double m = std::abs(scalar_traits<K>::to_complex(rec.multiplier));
        if (m <= tol)
            rec.cls = CycleClass::superattracting;
        else if (std::abs(m - 1.0) <= tol)
            rec.cls = CycleClass::indifferent;
        else
            rec.cls = m > 1.0 ? CycleClass::repelling : CycleClass::attracting;
    }
    return rec;
}

}  // namespace p1dyn
