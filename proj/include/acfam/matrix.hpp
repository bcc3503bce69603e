#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "acfam/errors.hpp"
#include "acfam/scalar.hpp"

namespace acfam {

/// Dense row-major matrix over Q(i). A value type: every operation below
/// returns a fresh matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) throw ShapeError("entry count does not match rows*cols");
  }
  /// Row-wise literal: Matrix{{1, 0}, {0, -1}}.
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw ShapeError("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Matrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static Matrix diagonal(const std::vector<Scalar>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const Scalar> entries() const { return data_; }
  std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!x.is_zero()) return false;
    return true;
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& x : data_) n += x.is_zero() ? 0 : 1;
    return n;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

inline void require_square(const Matrix& a, const char* what) {
  if (!a.is_square()) throw ShapeError(std::string(what) + ": matrix is not square");
}

/// Exact product. Zero entries of the left factor are skipped, so products
/// of sparse or monomial matrices cost O(nnz(a) * b.cols()).
inline Matrix mat_mul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("mat_mul: inner dimensions differ");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t t = 0; t < a.cols(); ++t) {
      const Scalar& x = a(i, t);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Scalar& y = b(t, j);
        if (y.is_zero()) continue;
        out(i, j) += x * y;
      }
    }
  }
  return out;
}

inline Matrix operator*(const Matrix& a, const Matrix& b) { return mat_mul(a, b); }

inline Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("add: shapes differ");
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!b(i, j).is_zero()) out(i, j) += b(i, j);
  return out;
}

inline Matrix operator-(const Matrix& a) {
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero()) out(i, j) = -a(i, j);
  return out;
}

inline Matrix operator-(const Matrix& a, const Matrix& b) { return a + (-b); }

inline Matrix scale(const Scalar& s, const Matrix& a) {
  Matrix out(a.rows(), a.cols());
  if (s.is_zero()) return out;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero()) out(i, j) = s * a(i, j);
  return out;
}

inline Matrix transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

/// a^e by repeated squaring; a^0 = I.
inline Matrix mat_pow(const Matrix& a, std::size_t e) {
  require_square(a, "mat_pow");
  Matrix result = Matrix::identity(a.rows());
  Matrix base = a;
  while (e > 0) {
    if (e & 1U) result = mat_mul(result, base);
    e >>= 1U;
    if (e > 0) base = mat_mul(base, base);
  }
  return result;
}

/// Block-diagonal stack of two square matrices.
inline Matrix direct_sum(const Matrix& a, const Matrix& b) {
  require_square(a, "direct_sum");
  require_square(b, "direct_sum");
  const std::size_t n = a.rows() + b.rows();
  Matrix out(n, n);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

/// Kronecker product; block (r, c) of the result is a(r, c) * b.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) {
      const Scalar& x = a(r, c);
      if (x.is_zero()) continue;
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
          if (!b(i, j).is_zero()) out(r * b.rows() + i, c * b.cols() + j) = x * b(i, j);
    }
  return out;
}

inline Matrix block(const Matrix& a, std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) {
  if (r0 + rows > a.rows() || c0 + cols > a.cols()) throw ShapeError("block: out of range");
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = a(r0 + i, c0 + j);
  return out;
}

inline void set_block(Matrix& a, std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows() > a.rows() || c0 + b.cols() > a.cols()) throw ShapeError("set_block: out of range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) a(r0 + i, c0 + j) = b(i, j);
}

/// Concatenates columns: [a | b].
inline Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() && a.cols() != 0 && b.cols() != 0) throw ShapeError("hstack: row counts differ");
  const std::size_t rows = a.cols() != 0 ? a.rows() : b.rows();
  Matrix out(rows, a.cols() + b.cols());
  if (a.cols() != 0) set_block(out, 0, 0, a);
  if (b.cols() != 0) set_block(out, 0, a.cols(), b);
  return out;
}

inline Matrix column(const Matrix& a, std::size_t c) { return block(a, 0, c, a.rows(), 1); }

/// Row-major n*m-vector view of a matrix, as a 1 x (rows*cols) matrix.
inline Matrix flatten(const Matrix& a) {
  return {1, a.rows() * a.cols(), std::vector<Scalar>(a.entries().begin(), a.entries().end())};
}

/// Stacks the flattened members as rows of a k x (rows*cols) matrix.
inline Matrix stack_flattened(std::span<const Matrix> members) {
  if (members.empty()) return {};
  const std::size_t width = members.front().rows() * members.front().cols();
  Matrix out(members.size(), width);
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i].rows() * members[i].cols() != width) throw ShapeError("stack_flattened: sizes differ");
    auto e = members[i].entries();
    for (std::size_t j = 0; j < width; ++j) out(i, j) = e[j];
  }
  return out;
}

inline std::string to_string(const Matrix& a) {
  std::string out = "[";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    out += i == 0 ? "[" : ", [";
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j != 0) out += ", ";
      out += to_string(a(i, j));
    }
    out += "]";
  }
  return out + "]";
}

inline std::ostream& operator<<(std::ostream& os, const Matrix& a) { return os << to_string(a); }

}  // namespace acfam
