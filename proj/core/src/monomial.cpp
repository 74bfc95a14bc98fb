#include "p1dyn/monomial.hpp"

#include <algorithm>

#include "p1dyn/errors.hpp"

namespace p1dyn {

namespace {

using DC = Dual<Cyclo>;

Poly<Cyclo> zero_poly() { return Poly<Cyclo>{}; }

void add_monomial(std::vector<Cyclo>& coeffs, int power, const Cyclo& value) {
    if (static_cast<int>(coeffs.size()) <= power) coeffs.resize(static_cast<std::size_t>(power) + 1, Cyclo());
    coeffs[static_cast<std::size_t>(power)] = coeffs[static_cast<std::size_t>(power)] + value;
}

// f o f with numerator/denominator over a commutative ring; plain polynomial
// arithmetic, no reductions (the duals have nilpotents).
std::pair<Poly<DC>, Poly<DC>> self_compose(const Poly<DC>& num, const Poly<DC>& den, int d) {
    std::vector<Poly<DC>> npow(static_cast<std::size_t>(d) + 1), dpow(static_cast<std::size_t>(d) + 1);
    npow[0] = dpow[0] = Poly<DC>(scalar_traits<DC>::one());
    for (int i = 1; i <= d; ++i) {
        npow[static_cast<std::size_t>(i)] = npow[static_cast<std::size_t>(i - 1)] * num;
        dpow[static_cast<std::size_t>(i)] = dpow[static_cast<std::size_t>(i - 1)] * den;
    }
    Poly<DC> cn, cd;
    for (int i = 0; i <= d; ++i) {
        const Poly<DC> mono = npow[static_cast<std::size_t>(i)] * dpow[static_cast<std::size_t>(d - i)];
        cn = cn + Poly<DC>(num.coeff(i)) * mono;
        cd = cd + Poly<DC>(den.coeff(i)) * mono;
    }
    return {cn, cd};
}

// eps-derivative of the second iterate of the monomial map with one
// perturbed coefficient: d(N/D) = N_eps - base^{d^2} * D_eps since the base
// denominator is identically 1 at the monomial point.
Poly<Cyclo> dual_partial(int d, const Cyclo& lead, PartialKind which_coeff, int index) {
    std::vector<DC> nc(static_cast<std::size_t>(d) + 1, DC());
    std::vector<DC> dc(static_cast<std::size_t>(d) + 1, DC());
    nc[static_cast<std::size_t>(d)] = DC(lead);
    dc[0] = DC(Cyclo(Rational(1)));
    const Cyclo one(Rational(1));
    if (which_coeff == PartialKind::a || which_coeff == PartialKind::A)
        nc[static_cast<std::size_t>(index)] = nc[static_cast<std::size_t>(index)] + DC(Cyclo(), one);
    else
        dc[static_cast<std::size_t>(index)] = dc[static_cast<std::size_t>(index)] + DC(Cyclo(), one);

    auto [cn, cd] = self_compose(Poly<DC>(nc), Poly<DC>(dc), d);

    // d(N/D) = N_eps - base * D_eps with base = lead^{d+1} z^{d^2} and unit
    // base denominator.
    const Cyclo base_lead = lead.pow(d + 1);
    std::vector<Cyclo> out;
    for (int i = 0; i <= cn.degree(); ++i) add_monomial(out, i, cn.coeff(i).deriv);
    for (int i = 0; i <= cd.degree(); ++i) {
        const Cyclo v = cd.coeff(i).deriv;
        if (!v.is_zero()) add_monomial(out, i + d * d, -(base_lead * v));
    }
    return Poly<Cyclo>(out);
}

}  // namespace

Poly<Cyclo> partial_polynomial(int d, const Cyclo& zeta, const PartialSpec& spec) {
    if (d < 2) throw DomainMismatch("degree must be >= 2");
    if (zeta.is_zero()) throw DomainMismatch("zeta must be nonzero");
    const Cyclo dd = Cyclo(Rational(d));
    std::vector<Cyclo> c;
    switch (spec.kind) {
        case PartialKind::A: {
            const int k = spec.index;
            add_monomial(c, d * d - d + k, -(dd * zeta.pow(d)));
            add_monomial(c, d * k, -zeta.pow(k));
            break;
        }
        case PartialKind::B: {
            const int l = spec.index;
            add_monomial(c, d * d + l * d, zeta.pow(l + 1 + d));
            add_monomial(c, d * d + l, dd * zeta.pow(d + 1));
            break;
        }
        case PartialKind::a: {
            const int i = spec.index;
            add_monomial(c, d * d - d + i, dd);
            add_monomial(c, i * d, Cyclo(Rational(1)));
            break;
        }
        case PartialKind::b: {
            const int j = spec.index;
            add_monomial(c, d * d + j * d, Cyclo(Rational(-1)));
            add_monomial(c, d * d + j, -dd);
            break;
        }
    }
    return Poly<Cyclo>(c);
}

Poly<Cyclo> partial_polynomial_oracle(int d, const Cyclo& zeta, const PartialSpec& spec) {
    if (d < 2) throw DomainMismatch("degree must be >= 2");
    const Cyclo one(Rational(1));
    switch (spec.kind) {
        case PartialKind::a:
            return dual_partial(d, one, PartialKind::a, spec.index);
        case PartialKind::b:
            return dual_partial(d, one, PartialKind::b, spec.index);
        case PartialKind::A:
            return -dual_partial(d, zeta, PartialKind::A, spec.index);
        case PartialKind::B:
            return -dual_partial(d, zeta, PartialKind::B, spec.index);
    }
    return zero_poly();
}

Matrix<Cyclo> coefficient_matrix(int d, const Cyclo& zeta) {
    const std::size_t rows = static_cast<std::size_t>(4 * d + 2);
    const std::size_t cols = static_cast<std::size_t>(2 * d * d + 1);
    Matrix<Cyclo> M(rows, cols);
    std::size_t r = 0;
    auto put = [&](const PartialSpec& spec) {
        const Poly<Cyclo> p = partial_polynomial(d, zeta, spec);
        for (int i = 0; i <= p.degree(); ++i) M(r, static_cast<std::size_t>(i)) = p.coeff(i);
        ++r;
    };
    for (int k = 0; k <= d; ++k) put({PartialKind::A, k});
    for (int l = 1; l <= d; ++l) put({PartialKind::B, l});
    for (int i = 0; i <= d; ++i) put({PartialKind::a, i});
    for (int j = 1; j <= d; ++j) put({PartialKind::b, j});
    return M;
}

std::vector<int> expected_nonzero_columns(int d) {
    std::vector<int> cols;
    for (int k = 0; k <= d - 2; ++k) cols.push_back(k * d + 1);
    for (int i = 0; i <= d - 1; ++i) cols.push_back((d - 1) * d + 1 + i);
    for (int j = 0; j <= d - 1; ++j) cols.push_back(d * d + 1 + j);
    cols.push_back(d * (d + 1) + 1);
    for (int s = 1; s <= d - 1; ++s) cols.push_back(d * (d + 1) + 1 + s * d);
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    return cols;
}

RankCertificate rank_certificate(int d) {
    if (d < 2 || d > 12) throw BudgetExceeded("rank certificate supports 2 <= d <= 12");
    RankCertificate cert;
    cert.d = d;
    cert.zeta_order = d + 1;
    Matrix<Cyclo> M = coefficient_matrix(d, Cyclo::zeta(d + 1));
    cert.rows = M.rows();
    cert.cols = M.cols();
    cert.rank = static_cast<int>(rank_bareiss(M));
    cert.expected = 4 * d - 1;
    cert.pass = cert.rank == cert.expected;
    return cert;
}

RankCertificate degenerate_rank(int d, int m) {
    if (d < 2 || d > 12) throw BudgetExceeded("rank certificate supports 2 <= d <= 12");
    if (m < 1 || m > d) throw DomainMismatch("degenerate zeta order must satisfy 1 <= m <= d");
    RankCertificate cert;
    cert.d = d;
    cert.zeta_order = m;
    Matrix<Cyclo> M = coefficient_matrix(d, Cyclo::zeta(m));
    cert.rows = M.rows();
    cert.cols = M.cols();
    cert.rank = static_cast<int>(rank_bareiss(M));
    cert.expected = 4 * d - 1;
    cert.pass = cert.rank == cert.expected;
    return cert;
}

std::vector<ColumnRelation> degenerate_column_relations(int d, int m) {
    const Cyclo zeta = Cyclo::zeta(m);
    Matrix<Cyclo> M = coefficient_matrix(d, zeta);
    const Cyclo dd = Cyclo(Rational(d));
    std::vector<ColumnRelation> out;
    for (int k = 0; k <= d - 2; ++k) {
        if (!(zeta.pow(d) == zeta.pow(k))) continue;
        const std::size_t lhs = static_cast<std::size_t>((d - 1) * d + k);  // 0-based column
        const std::size_t rhs = static_cast<std::size_t>(k * d);
        bool holds = true;
        for (std::size_t r = 0; r < M.rows(); ++r)
            if (!(M(r, lhs) == dd * M(r, rhs))) {
                holds = false;
                break;
            }
        out.push_back({k, holds});
    }
    return out;
}

bool second_iterate_identity_order(int d, int zeta_order) {
    const Cyclo zeta = Cyclo::zeta(zeta_order);
    std::vector<Cyclo> monic(static_cast<std::size_t>(d) + 1, Cyclo());
    monic.back() = Cyclo(Rational(1));
    std::vector<Cyclo> scaled(static_cast<std::size_t>(d) + 1, Cyclo());
    scaled.back() = zeta;
    auto f0 = RationalMap<Cyclo>::create(Poly<Cyclo>(monic), Poly<Cyclo>(Cyclo(Rational(1))), d);
    auto g0 = RationalMap<Cyclo>::create(Poly<Cyclo>(scaled), Poly<Cyclo>(Cyclo(Rational(1))), d);
    return compose(g0, g0) == compose(f0, f0);
}

bool second_iterate_identity(int d) { return second_iterate_identity_order(d, d + 1); }

}  // namespace p1dyn
