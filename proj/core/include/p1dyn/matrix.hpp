#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "p1dyn/errors.hpp"
#include "p1dyn/scalar_fwd.hpp"

namespace p1dyn {

// Dense row-major matrix over an exact scalar domain (rationals, cyclotomic
// elements) or floating scalars. Exact rank and determinant go through
// fraction-free Bareiss elimination with a deterministic pivot order so that
// certificates are bit-reproducible.
template <class K>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, scalar_traits<K>::zero()) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = scalar_traits<K>::one();
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    K& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const K& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
    }

    bool operator==(const Matrix& o) const = default;

private:
    std::size_t rows_, cols_;
    std::vector<K> a_;
};

// Rank over the fraction field via Bareiss elimination. Pivot order is fixed:
// columns left to right, and within a column the first row (top to bottom)
// with a nonzero entry.
template <class K>
std::size_t rank_bareiss(Matrix<K> m) {
    const std::size_t nr = m.rows(), nc = m.cols();
    std::size_t rank = 0;
    K prev = scalar_traits<K>::one();
    for (std::size_t col = 0; col < nc && rank < nr; ++col) {
        std::size_t piv = rank;
        while (piv < nr && scalar_traits<K>::is_zero(m(piv, col))) ++piv;
        if (piv == nr) continue;
        m.swap_rows(rank, piv);
        const K pivot = m(rank, col);
        for (std::size_t i = rank + 1; i < nr; ++i) {
            for (std::size_t j = col + 1; j < nc; ++j)
                m(i, j) = (m(i, j) * pivot - m(i, col) * m(rank, j)) / prev;
            m(i, col) = scalar_traits<K>::zero();
        }
        prev = pivot;
        ++rank;
    }
    return rank;
}

// Exact determinant of a square matrix (Bareiss; the final pivot is the
// determinant up to the row-swap sign).
template <class K>
K det_bareiss(Matrix<K> m) {
    if (m.rows() != m.cols()) throw DomainMismatch("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return scalar_traits<K>::one();
    bool negate = false;
    K prev = scalar_traits<K>::one();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && scalar_traits<K>::is_zero(m(piv, k))) ++piv;
        if (piv == n) return scalar_traits<K>::zero();
        if (piv != k) {
            m.swap_rows(k, piv);
            negate = !negate;
        }
        const K pivot = m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * pivot - m(i, k) * m(k, j)) / prev;
            m(i, k) = scalar_traits<K>::zero();
        }
        prev = pivot;
    }
    K det = m(n - 1, n - 1);
    return negate ? K(-det) : det;
}

}  // namespace p1dyn
