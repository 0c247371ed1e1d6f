#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "symrig/matrix.hpp"

namespace symrig {

namespace detail {

// Clears denominators row by row so elimination can run over the integers.
inline std::vector<std::vector<Integer>> integer_rows(const RationalMatrix& m) {
  std::vector<std::vector<Integer>> rows(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
  }
  return rows;
}

// In-place fraction-free (Bareiss) elimination; returns the pivot count. Every division
// below is exact by Sylvester's identity.
inline std::size_t bareiss_eliminate(std::vector<std::vector<Integer>>& a, std::size_t cols,
                                     int* swap_parity = nullptr) {
  const std::size_t n = a.size();
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < cols && r < n; ++c) {
    std::size_t p = r;
    while (p < n && sgn(a[p][c]) == 0) ++p;
    if (p == n) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      if (swap_parity) *swap_parity = -*swap_parity;
    }
    for (std::size_t i = r + 1; i < n; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

}  // namespace detail

/// Exact rank by fraction-free Gaussian elimination.
inline std::size_t rank(const RationalMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  auto rows = detail::integer_rows(m);
  return detail::bareiss_eliminate(rows, m.cols());
}

/// Relative singular-value cutoff used for complex-float ranks.
inline constexpr double kComplexRankTolerance = 0x1p-40;

/// Numerical rank: singular values above tol * max(m, n) * sigma_max.
inline std::size_t rank(const ComplexMatrix& m, double tol = kComplexRankTolerance) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(e);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double cutoff = tol * static_cast<double>(std::max(m.rows(), m.cols())) * s(0);
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cutoff) ++r;
  return r;
}

/// Exact determinant (Bareiss on the denominator-cleared matrix).
inline Rational determinant(const RationalMatrix& m) {
  if (!m.square()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Rational(1);
  Integer scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    scale *= l;
  }
  auto rows = detail::integer_rows(m);
  int parity = 1;
  if (detail::bareiss_eliminate(rows, n, &parity) < n) return Rational(0);
  Rational det(rows[n - 1][n - 1] * parity, scale);
  det.canonicalize();
  return det;
}

/// Basis of {x : m x = 0} from the reduced row echelon form; one vector per free column,
/// with a 1 in that column.
inline std::vector<RationalVector> nullspace(const RationalMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  RationalMatrix a = m;
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(a(p, c)) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
    const Rational inv = 1 / a(r, c);
    for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(a(i, c)) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -a(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Stacks vectors as the rows of a matrix.
inline RationalMatrix rows_matrix(const std::vector<RationalVector>& vs, std::size_t cols) {
  RationalMatrix m(vs.size(), cols);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].size() != cols) throw InputError("vector length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = vs[i][j];
  }
  return m;
}

}  // namespace symrig
