#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "fanokit/rational.hpp"

// Small dense exact linear algebra. Everything here works on matrices of
// a handful of rows, so plain Gaussian elimination over Q is enough.

namespace fanokit::linalg {

using QMatrix = std::vector<QVector>;

/// Row-reduces in place, choosing pivots among the first `cols` columns
/// (any further columns are carried along); returns the pivot columns.
inline std::vector<std::size_t> row_reduce(QMatrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t pick = row;
    while (pick < m.size() && m[pick][col] == 0) ++pick;
    if (pick == m.size()) continue;
    std::swap(m[row], m[pick]);
    Rational inv = 1 / m[row][col];
    const std::size_t width = m[row].size();
    for (std::size_t c = col; c < width; ++c) m[row][c] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (std::size_t c = col; c < width; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(QMatrix m) {
  if (m.empty()) return 0;
  return row_reduce(m, m.front().size()).size();
}

inline Rational determinant(QMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pick = col;
    while (pick < n && m[pick][col] == 0) ++pick;
    if (pick == n) return 0;
    if (pick != col) {
      std::swap(m[pick], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

/// Unique solution of a square system, or nullopt when singular.
inline std::optional<QVector> solve(const QMatrix& a, const QVector& b) {
  const std::size_t n = a.size();
  QMatrix aug(n);
  for (std::size_t i = 0; i < n; ++i) {
    aug[i] = a[i];
    aug[i].push_back(b[i]);
  }
  auto pivots = row_reduce(aug, n);
  if (pivots.size() != n) return std::nullopt;
  QVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug[i][n];
  return x;
}

/// Basis of {x : m x = 0}.
inline QMatrix nullspace(QMatrix m, std::size_t cols) {
  auto pivots = row_reduce(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  QMatrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    QVector v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Scales a nonzero rational vector to the primitive integer vector on the
/// same ray.
inline IntVector primitive_integer(const QVector& v) {
  Integer den_lcm = 1;
  for (const auto& x : v) den_lcm = lcm(den_lcm, x.get_den());
  std::vector<Integer> scaled;
  scaled.reserve(v.size());
  Integer g = 0;
  for (const auto& x : v) {
    Integer s = x.get_num() * (den_lcm / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_mpz_t());
    scaled.push_back(s);
  }
  IntVector out;
  out.reserve(v.size());
  for (auto& s : scaled) out.push_back(to_int64(g == 0 ? s : Integer(s / g)));
  return out;
}

inline std::int64_t gcd_of(const IntVector& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  return g;
}

/// Calls `visit` with every k-subset of {0..n-1} in lexicographic order.
inline void for_each_combination(std::size_t n, std::size_t k,
                                 const std::function<void(const std::vector<std::size_t>&)>& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Dimension of the affine hull of `points`.
inline std::size_t affine_dimension(const std::vector<QVector>& points) {
  if (points.size() <= 1) return 0;
  QMatrix diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) {
    QVector d(points[0].size());
    for (std::size_t c = 0; c < d.size(); ++c) d[c] = points[i][c] - points[0][c];
    diffs.push_back(std::move(d));
  }
  return rank(std::move(diffs));
}

}  // namespace fanokit::linalg
