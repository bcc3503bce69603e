#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "acfam/errors.hpp"
#include "acfam/gaussian_integer.hpp"
#include "acfam/matrix.hpp"

namespace acfam {

namespace detail {

using IntRow = std::vector<GaussianInteger>;

inline mpz_class row_denominator_lcm(std::span<const Scalar> row) {
  mpz_class l(1);
  for (const auto& x : row) {
    if (sgn(x.re()) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.re().get_den_mpz_t());
    if (sgn(x.im()) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.im().get_den_mpz_t());
  }
  return l;
}

inline void make_primitive(IntRow& row, std::size_t from) {
  mpz_class g(0);
  for (std::size_t j = from; j < row.size(); ++j) {
    if (sgn(row[j].re) != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), row[j].re.get_mpz_t());
    if (sgn(row[j].im) != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), row[j].im.get_mpz_t());
    if (g == 1) return;
  }
  if (g <= 1) return;
  for (std::size_t j = from; j < row.size(); ++j) {
    if (sgn(row[j].re) != 0) mpz_divexact(row[j].re.get_mpz_t(), row[j].re.get_mpz_t(), g.get_mpz_t());
    if (sgn(row[j].im) != 0) mpz_divexact(row[j].im.get_mpz_t(), row[j].im.get_mpz_t(), g.get_mpz_t());
  }
}

inline std::size_t bit_size(const GaussianInteger& z) {
  return mpz_sizeinbase(z.re.get_mpz_t(), 2) + mpz_sizeinbase(z.im.get_mpz_t(), 2);
}

}  // namespace detail

/// Exact rank by fraction-free elimination over Z[i].
///
/// Each row is first scaled by the lcm of its denominators, which leaves
/// the rank unchanged. Elimination then uses the cross-multiplication
/// update  row_i <- p * row_i - a_ic * row_pivot  and divides every updated
/// row by its integer content, so no rational arithmetic occurs and rows
/// whose pivot-column entry is already zero are never touched.
inline std::size_t rank(const Matrix& a) {
  std::vector<detail::IntRow> rows;
  rows.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto src = a.row(i);
    bool nonzero = std::any_of(src.begin(), src.end(), [](const Scalar& x) { return !x.is_zero(); });
    if (!nonzero) continue;
    mpz_class l = detail::row_denominator_lcm(src);
    detail::IntRow r(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!src[j].is_zero()) r[j] = to_gaussian_integer(src[j], l);
    detail::make_primitive(r, 0);
    rows.push_back(std::move(r));
  }

  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < a.cols() && pivot_row < rows.size(); ++c) {
    std::size_t best = rows.size();
    std::size_t best_size = 0;
    for (std::size_t i = pivot_row; i < rows.size(); ++i) {
      if (rows[i][c].is_zero()) continue;
      std::size_t s = detail::bit_size(rows[i][c]);
      if (best == rows.size() || s < best_size) {
        best = i;
        best_size = s;
      }
    }
    if (best == rows.size()) continue;
    std::swap(rows[pivot_row], rows[best]);
    const detail::IntRow& piv = rows[pivot_row];
    const GaussianInteger p = piv[c];
    for (std::size_t i = pivot_row + 1; i < rows.size(); ++i) {
      detail::IntRow& r = rows[i];
      if (r[c].is_zero()) continue;
      const GaussianInteger f = r[c];
      const bool unit_pivot = p.is_unit() && p.re == 1;
      for (std::size_t j = c + 1; j < a.cols(); ++j) {
        const bool rz = r[j].is_zero();
        const bool pz = piv[j].is_zero();
        if (rz && pz) continue;
        GaussianInteger v = (rz || unit_pivot) ? r[j] : p * r[j];
        if (!pz) v = v - f * piv[j];
        r[j] = std::move(v);
      }
      r[c] = GaussianInteger{};
      detail::make_primitive(r, c + 1);
    }
    ++pivot_row;
  }
  return pivot_row;
}

/// Reduced row echelon form over Q(i), with the pivot column of each
/// nonzero row.
struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

inline RowEchelon row_echelon(const Matrix& a) {
  RowEchelon out{a, {}};
  Matrix& m = out.reduced;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Scalar inv = m(r, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j)
      if (!m(r, j).is_zero()) m(r, j) = m(r, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Scalar f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  return out;
}

/// Columns form a basis of the null space {x : a x = 0}, one per free
/// column of the echelon form, with a 1 in that free coordinate.
inline Matrix kernel_basis(const Matrix& a) {
  RowEchelon e = row_echelon(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix basis(a.cols(), free_cols.size());
  for (std::size_t t = 0; t < free_cols.size(); ++t) {
    const std::size_t f = free_cols[t];
    basis(f, t) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      if (!e.reduced(r, f).is_zero()) basis(e.pivots[r], t) = -e.reduced(r, f);
  }
  return basis;
}

/// The pivot columns of `a`: a basis of its column space drawn from its own columns.
inline Matrix column_space_basis(const Matrix& a) {
  RowEchelon e = row_echelon(a);
  Matrix out(a.rows(), e.pivots.size());
  for (std::size_t t = 0; t < e.pivots.size(); ++t)
    for (std::size_t i = 0; i < a.rows(); ++i) out(i, t) = a(i, e.pivots[t]);
  return out;
}

inline bool is_invertible(const Matrix& a) { return a.is_square() && rank(a) == a.rows(); }

inline Matrix inverse(const Matrix& a) {
  require_square(a, "inverse");
  const std::size_t n = a.rows();
  RowEchelon e = row_echelon(hstack(a, Matrix::identity(n)));
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1))
    throw InvertibilityError("inverse: matrix is singular");
  return block(e.reduced, 0, n, n, n);
}

inline Scalar determinant(const Matrix& a) {
  require_square(a, "determinant");
  Matrix m = a;
  Scalar det = 1;
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return Scalar{};
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    const Scalar inv = m(c, c).inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      const Scalar f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j)
        if (!m(c, j).is_zero()) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

/// v a v^{-1}. Rank and characteristic polynomial are preserved.
inline Matrix conjugate(const Matrix& a, const Matrix& v) {
  require_square(a, "conjugate");
  if (v.rows() != a.rows() || !v.is_square()) throw ShapeError("conjugate: size mismatch");
  return mat_mul(mat_mul(v, a), inverse(v));
}

/// Same as conjugate() with a precomputed inverse.
inline Matrix conjugate_with_inverse(const Matrix& a, const Matrix& v, const Matrix& v_inv) {
  return mat_mul(mat_mul(v, a), v_inv);
}

}  // namespace acfam
