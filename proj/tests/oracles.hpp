#pragma once

// Slow, independent reference implementations used only by the tests. They
// share no code with the library beyond the Matrix/GaussianRational value
// types used to hand inputs in and read results back.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "acfam/matrix.hpp"
#include "acfam/polynomial.hpp"

namespace oracle {

// Complex rational as a plain (re, im) pair.
struct C {
  mpq_class re{0}, im{0};
};

inline C add(const C& a, const C& b) { return {a.re + b.re, a.im + b.im}; }
inline C sub(const C& a, const C& b) { return {a.re - b.re, a.im - b.im}; }
inline C mul(const C& a, const C& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline C div(const C& a, const C& b) {
  const mpq_class d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline bool is_zero(const C& a) { return a.re == 0 && a.im == 0; }

using Grid = std::vector<std::vector<C>>;

inline Grid from_matrix(const acfam::Matrix& m) {
  Grid g(m.rows(), std::vector<C>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g[i][j] = {m(i, j).re(), m(i, j).im()};
  return g;
}

inline acfam::Matrix to_matrix(const Grid& g, std::size_t cols) {
  acfam::Matrix m(g.size(), cols);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = acfam::Scalar(g[i][j].re, g[i][j].im);
  return m;
}

/// Textbook Gaussian elimination with division, first nonzero pivot.
inline std::size_t naive_rank(const acfam::Matrix& m) {
  Grid g = from_matrix(m);
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && is_zero(g[p][c])) ++p;
    if (p == rows) continue;
    std::swap(g[p], g[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (is_zero(g[i][c])) continue;
      const C f = div(g[i][c], g[r][c]);
      for (std::size_t j = c; j < cols; ++j) g[i][j] = sub(g[i][j], mul(f, g[r][j]));
    }
    ++r;
  }
  return r;
}

/// Triple-loop product.
inline acfam::Matrix naive_mul(const acfam::Matrix& a, const acfam::Matrix& b) {
  const Grid x = from_matrix(a), y = from_matrix(b);
  Grid z(a.rows(), std::vector<C>(b.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t t = 0; t < a.cols(); ++t) z[i][j] = add(z[i][j], mul(x[i][t], y[t][j]));
  return to_matrix(z, b.cols());
}

/// Determinant by cofactor expansion along the first row (small n only).
inline C cofactor_det(const Grid& g) {
  const std::size_t n = g.size();
  if (n == 0) return {1, 0};
  if (n == 1) return g[0][0];
  C total;
  for (std::size_t c = 0; c < n; ++c) {
    if (is_zero(g[0][c])) continue;
    Grid minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<C> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(g[i][j]);
      minor.push_back(std::move(row));
    }
    const C term = mul(g[0][c], cofactor_det(minor));
    total = c % 2 == 0 ? add(total, term) : sub(total, term);
  }
  return total;
}

/// det(xI - A) by the Faddeev-LeVerrier recursion: M_0 = 0, c_n = 1,
/// M_m = A M_{m-1} + c_{n-m+1} I, c_{n-m} = -tr(A M_m) / m.
inline acfam::Polynomial faddeev_leverrier(const acfam::Matrix& a) {
  const std::size_t n = a.rows();
  std::vector<acfam::Scalar> coeff(n + 1);
  coeff[n] = 1;
  acfam::Matrix mk(n, n);
  for (std::size_t m = 1; m <= n; ++m) {
    acfam::Matrix next = naive_mul(a, mk);
    for (std::size_t i = 0; i < n; ++i) next(i, i) = next(i, i) + coeff[n - m + 1];
    mk = next;
    const acfam::Matrix am = naive_mul(a, mk);
    acfam::Scalar tr;
    for (std::size_t i = 0; i < n; ++i) tr = tr + am(i, i);
    coeff[n - m] = -(tr / acfam::Scalar(static_cast<long>(m)));
  }
  return acfam::Polynomial(std::move(coeff));
}

/// Random integer matrix with entries in [-height, height].
inline acfam::Matrix random_integer_matrix(std::size_t rows, std::size_t cols, long height, std::mt19937_64& rng) {
  acfam::Matrix m(rows, cols);
  std::uniform_int_distribution<long> d(-height, height);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

/// Random matrix of prescribed rank r: product of rows x r and r x cols
/// random integer factors (rank exactly r with high probability; the tests
/// only use it as input, comparing two rank algorithms).
inline acfam::Matrix random_low_rank(std::size_t rows, std::size_t cols, std::size_t r, long height,
                                     std::mt19937_64& rng) {
  return naive_mul(random_integer_matrix(rows, r, height, rng), random_integer_matrix(r, cols, height, rng));
}

/// Random Gaussian-integer matrix.
inline acfam::Matrix random_gaussian_matrix(std::size_t rows, std::size_t cols, long height, std::mt19937_64& rng) {
  acfam::Matrix m(rows, cols);
  std::uniform_int_distribution<long> d(-height, height);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = acfam::Scalar(mpq_class(d(rng)), mpq_class(d(rng)));
  return m;
}

/// 2n - 1, 2n - 2, 2n - 3 by size.
inline long alpha_closed(std::size_t n) {
  const long m = static_cast<long>(n);
  if (n <= 2) return 2 * m - 1;
  if (n <= 4) return 2 * m - 2;
  return 2 * m - 3;
}

}  // namespace oracle
