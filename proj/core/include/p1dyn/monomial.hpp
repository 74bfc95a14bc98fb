#pragma once

#include <string>
#include <vector>

#include "p1dyn/cyclo.hpp"
#include "p1dyn/map.hpp"
#include "p1dyn/matrix.hpp"
#include "p1dyn/poly.hpp"
#include "p1dyn/scalar.hpp"

namespace p1dyn {

// Coefficient partials of F = f o f - g o g at the monomial pair
// (z^d, zeta z^d), in the chart where denominators have constant term 1:
//   f = (a_d z^d + ... + a_0) / (b_d z^d + ... + b_1 z + 1)
// and likewise (A, B) for g. The 4d+2 partials are indexed as below.
enum class PartialKind { A, B, a, b };

struct PartialSpec {
    PartialKind kind;
    int index;  // A, a: 0..d; B, b: 1..d
};

// Closed forms, valid for every zeta (they reduce to the primitive-case
// displays when zeta^{d+1} = 1):
//   dF/dA_k = -d zeta^d z^{d^2-d+k} - zeta^k z^{dk}
//   dF/dB_l = zeta^{l+1+d} z^{d^2+ld} + d zeta^{d+1} z^{d^2+l}
//   dF/da_i = d z^{d^2-d+i} + z^{id}
//   dF/db_j = -z^{d^2+jd} - d z^{d^2+j}
Poly<Cyclo> partial_polynomial(int d, const Cyclo& zeta, const PartialSpec& spec);

// Independent oracle: composes the perturbed map with itself over the dual
// numbers Q(zeta)[eps]/(eps^2) and reads the eps-coefficient; never touches
// the closed forms.
Poly<Cyclo> partial_polynomial_oracle(int d, const Cyclo& zeta, const PartialSpec& spec);

// Rows are the 4d+2 partials in the order A_0..A_d, B_1..B_d, a_0..a_d,
// b_1..b_d; column s holds the coefficients of z^{s-1}, s = 1..2d^2+1.
Matrix<Cyclo> coefficient_matrix(int d, const Cyclo& zeta);

// The 4d-1 column indices (1-based) that are nonzero for primitive zeta.
std::vector<int> expected_nonzero_columns(int d);

struct RankCertificate {
    int d = 2;
    int zeta_order = 3;
    std::size_t rows = 0, cols = 0;
    int rank = 0;
    int expected = 0;
    bool pass = false;
};

// Exact rank over Q(zeta_{d+1}); pass iff rank == 4d-1.
RankCertificate rank_certificate(int d);

// Same with zeta of exact order m <= d (the degenerate-zeta experiments).
RankCertificate degenerate_rank(int d, int m);

// The remark's displayed relation m_{(d-1)d+k+1} = d * m_{kd+1}, checked for
// every k in {0..d-2} with zeta^d = zeta^k; which k realizes it is found by
// search, not assumed.
struct ColumnRelation {
    int k;
    bool holds;
};
std::vector<ColumnRelation> degenerate_column_relations(int d, int m);

// compose(g0, g0) == compose(f0, f0) for f0 = z^d, g0 = zeta z^d: exact with
// zeta primitive of order d+1, and false for lower orders dividing d.
bool second_iterate_identity(int d);
bool second_iterate_identity_order(int d, int zeta_order);

}  // namespace p1dyn
