#pragma once

#include "lgvw/rational.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace lgvw {

template <typename T>
using Matrix = std::vector<std::vector<T>>;

using QMatrix = Matrix<Rational>;

inline QMatrix zero_matrix(std::size_t rows, std::size_t cols)
{
    return QMatrix(rows, std::vector<Rational>(cols, Rational(0)));
}

inline QMatrix identity_matrix(std::size_t n)
{
    QMatrix m = zero_matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline QMatrix transposed(const QMatrix& a)
{
    if (a.empty()) return {};
    QMatrix t = zero_matrix(a[0].size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

inline QMatrix multiply(const QMatrix& a, const QMatrix& b)
{
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    QMatrix c = zero_matrix(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (is_zero(a[i][l])) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

inline std::vector<Rational> multiply(const QMatrix& a, const std::vector<Rational>& v)
{
    std::vector<Rational> out(a.size(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
    return out;
}

// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> row_reduce(QMatrix& a, std::size_t ncols_to_pivot)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols_to_pivot && row < a.size(); ++col) {
        std::size_t p = row;
        while (p < a.size() && is_zero(a[p][col])) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[row]);
        Rational inv = 1 / a[row][col];
        for (auto& x : a[row]) x *= inv;
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == row || is_zero(a[r][col])) continue;
            Rational f = a[r][col];
            for (std::size_t c = col; c < a[r].size(); ++c) a[r][c] -= f * a[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t matrix_rank(QMatrix a)
{
    if (a.empty()) return 0;
    return row_reduce(a, a[0].size()).size();
}

inline Rational determinant(QMatrix a)
{
    std::size_t n = a.size();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && is_zero(a[p][col])) ++p;
        if (p == n) return 0;
        if (p != col) {
            std::swap(a[p], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (is_zero(a[r][col])) continue;
            Rational f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return det;
}

// Inverse by Gauss-Jordan; skips zero entries so block-sparse matrices
// (pairing matrices) stay cheap. Returns nullopt when singular.
inline std::optional<QMatrix> inverse(const QMatrix& a)
{
    std::size_t n = a.size();
    QMatrix aug = zero_matrix(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n + i] = 1;
    }
    if (row_reduce(aug, n).size() != n) return std::nullopt;
    QMatrix inv = zero_matrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

// Solves a x = b for a possibly overdetermined system. Returns nullopt when
// inconsistent; `unique` reports whether the solution is unique.
inline std::optional<std::vector<Rational>> solve_linear(const QMatrix& a,
                                                         const std::vector<Rational>& b,
                                                         bool& unique)
{
    std::size_t n = a.empty() ? 0 : a[0].size();
    QMatrix aug = a;
    for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
    auto pivots = row_reduce(aug, n);
    for (std::size_t r = pivots.size(); r < aug.size(); ++r)
        if (!is_zero(aug[r][n])) return std::nullopt;
    unique = pivots.size() == n;
    std::vector<Rational> x(n, Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][n];
    return x;
}

}  // namespace lgvw
