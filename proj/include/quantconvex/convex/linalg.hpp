#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "quantconvex/core/types.hpp"

namespace qc::convex {

/// Dense row-major matrix of exact scalars.
using Matrix = std::vector<std::vector<Scalar>>;

namespace detail {

/// In-place reduced row echelon form; returns the pivot columns.
inline std::vector<std::size_t> rref(Matrix& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col].is_zero()) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    const Scalar inv = Scalar(1) / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      const Scalar f = m[r][col];
      for (std::size_t c = col; c < m[r].size(); ++c) {
        if (!m[row][c].is_zero()) m[r][c] -= f * m[row][c];
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

inline std::size_t rank(Matrix m) {
  if (m.empty()) return 0;
  const std::size_t n = m.front().size();
  return detail::rref(m, n).size();
}

inline std::size_t rank(const std::vector<Point>& vectors) {
  Matrix m;
  for (const auto& v : vectors) m.emplace_back(v.begin(), v.end());
  return rank(std::move(m));
}

/// Dimension of the affine hull of a nonempty point list.
inline int affine_dimension(const std::vector<Point>& pts) {
  if (pts.empty()) return -1;
  std::vector<Point> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
  return diffs.empty() ? 0 : static_cast<int>(rank(diffs));
}

/// Unique solution of the square or overdetermined system m x = rhs, if any.
inline std::optional<std::vector<Scalar>> solve(const Matrix& m, const std::vector<Scalar>& rhs) {
  if (m.empty()) return std::nullopt;
  const std::size_t n = m.front().size();
  Matrix aug = m;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(rhs[i]);
  const auto piv = detail::rref(aug, n + 1);
  if (!piv.empty() && piv.back() == n) return std::nullopt;  // inconsistent
  if (piv.size() != n) return std::nullopt;                  // not unique
  std::vector<Scalar> x(n);
  for (std::size_t i = 0; i < n; ++i) x[piv[i]] = aug[i][n];
  return x;
}

/// Basis of the null space { x : m x = 0 } (columns count = ncols).
inline std::vector<std::vector<Scalar>> nullspace(Matrix m, std::size_t ncols) {
  const auto piv = detail::rref(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(ncols);
    v[free] = Scalar(1);
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Scalar determinant(Matrix m) {
  const std::size_t n = m.size();
  Scalar det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && m[sel][col].is_zero()) ++sel;
    if (sel == n) return Scalar(0);
    if (sel != col) {
      std::swap(m[sel], m[col]);
      det = -det;
    }
    det *= m[col][col];
    const Scalar inv = Scalar(1) / m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      const Scalar f = m[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

/// Indices of a lexicographically first maximal linearly independent subset of rows.
inline std::vector<std::size_t> independent_rows(const Matrix& rows) {
  std::vector<std::size_t> chosen;
  Matrix echelon;  // each row normalized with a leading 1 at pivot_col
  std::vector<std::size_t> pivot_col;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<Scalar> r = rows[i];
    for (std::size_t k = 0; k < echelon.size(); ++k) {
      const Scalar f = r[pivot_col[k]];
      if (f.is_zero()) continue;
      for (std::size_t c = 0; c < r.size(); ++c) r[c] -= f * echelon[k][c];
    }
    std::size_t lead = 0;
    while (lead < r.size() && r[lead].is_zero()) ++lead;
    if (lead == r.size()) continue;
    const Scalar inv = Scalar(1) / r[lead];
    for (auto& x : r) x *= inv;
    echelon.push_back(std::move(r));
    pivot_col.push_back(lead);
    chosen.push_back(i);
  }
  return chosen;
}

inline Matrix inverse(const Matrix& m) {
  const std::size_t n = m.size();
  Matrix aug = m;
  for (std::size_t i = 0; i < n; ++i) {
    aug[i].resize(2 * n);
    aug[i][n + i] = Scalar(1);
  }
  const auto piv = detail::rref(aug, n);
  require(piv.size() == n, ErrorCode::internal, "singular matrix");
  Matrix inv(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

/// Factorial as an exact scalar.
inline Scalar factorial(int n) {
  Scalar f(1);
  for (int i = 2; i <= n; ++i) f *= Scalar(i);
  return f;
}

/// Signed volume times d! of the simplex spanned by d+1 points in R^d.
inline Scalar simplex_det(const std::vector<Point>& s) {
  const std::size_t d = s.size() - 1;
  Matrix m(d, std::vector<Scalar>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m[i][j] = s[i + 1][j] - s[0][j];
  return determinant(std::move(m));
}

}  // namespace qc::convex
