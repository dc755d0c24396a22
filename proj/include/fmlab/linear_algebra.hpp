#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "fmlab/rational.hpp"

namespace fmlab {

/// Dense row-major matrix over a field type F providing +, -, *, inverse()
/// and is_zero(); zero is the element used to pad new entries.
template <class F>
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<F> a;

    Matrix(std::size_t r, std::size_t c, const F& zero) : rows(r), cols(c), a(r * c, zero) {}
    F& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const F& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

/// Reduced row echelon form in place; returns the pivot columns.
template <class F>
std::vector<std::size_t> row_reduce(Matrix<F>& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t piv = row;
        while (piv < m.rows && m(piv, col).is_zero()) ++piv;
        if (piv == m.rows) continue;
        if (piv != row)
            for (std::size_t k = 0; k < m.cols; ++k) std::swap(m(piv, k), m(row, k));
        const F inv = m(row, col).inverse();
        for (std::size_t k = col; k < m.cols; ++k) m(row, k) = m(row, k) * inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            const F factor = m(i, col);
            for (std::size_t k = col; k < m.cols; ++k) m(i, k) = m(i, k) - factor * m(row, k);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class F>
std::size_t rank(Matrix<F> m) {
    return row_reduce(m).size();
}

/// Solves m * x = b; nullopt when inconsistent. Free variables are set to zero.
template <class F>
std::optional<std::vector<F>> solve(const Matrix<F>& m, const std::vector<F>& b, const F& zero) {
    if (b.size() != m.rows) throw InvalidInput("right-hand side has the wrong length");
    Matrix<F> aug(m.rows, m.cols + 1, zero);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
        aug(i, m.cols) = b[i];
    }
    const auto pivots = row_reduce(aug);
    if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt;
    std::vector<F> x(m.cols, zero);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols);
    return x;
}

}  // namespace fmlab
