#pragma once

#include <string>
#include <vector>

#include "acfam/family.hpp"

namespace acfam {

/// Clifford doubling: from k anticommuting n x n matrices builds the k + 2
/// matrices of size 2n
///   [I 0; 0 -I],  [0 I; -I 0],  [0 e_i; e_i 0] for each e_i.
inline MatrixFamily double_family(const MatrixFamily& fam) {
  if (!is_anticommuting(fam)) throw PreconditionError("double_family: input is not anticommuting");
  const std::size_t n = fam.n();
  const Matrix id = Matrix::identity(n);
  const Matrix z = Matrix::zero(n, n);
  auto assemble = [n](const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
    Matrix m(2 * n, 2 * n);
    set_block(m, 0, 0, a);
    set_block(m, 0, n, b);
    set_block(m, n, 0, c);
    set_block(m, n, n, d);
    return m;
  };
  std::vector<Matrix> out;
  out.reserve(fam.size() + 2);
  out.push_back(direct_sum(id, -id));
  out.push_back(assemble(z, id, -id, z));
  for (const auto& e : fam.members()) out.push_back(assemble(z, e, e, z));
  return {2 * n, std::move(out), "double(" + fam.label() + ")"};
}

/// 2q + 1 anticommuting invertible matrices of size 2^q, obtained by
/// doubling the 1 x 1 family {(1)} q times.
inline MatrixFamily clifford_family(std::size_t q) {
  MatrixFamily fam(1, {Matrix{{1}}});
  for (std::size_t t = 0; t < q; ++t) fam = double_family(fam);
  return fam.with_label("clifford q=" + std::to_string(q));
}

/// Clifford members tensored with I_m (e (x) I_m), size m * 2^q.
inline MatrixFamily padded_clifford(std::size_t m, std::size_t q) {
  if (m == 0 || m % 2 == 0) throw PreconditionError("padded_clifford: m must be odd and positive");
  const MatrixFamily base = clifford_family(q);
  const Matrix id = Matrix::identity(m);
  std::vector<Matrix> out;
  for (const auto& e : base.members()) out.push_back(kron(e, id));
  return {m * base.n(), std::move(out), "padded m=" + std::to_string(m) + " q=" + std::to_string(q)};
}

/// Vectors u_1..u_2r, v_1..v_2r in Q^r with u_i v_i^t != 0 and
/// u_i v_j^t = -u_j v_i^t for i != j:
///   u_i = f_i, u_{r+i} = f_i, v_i = f_i, v_{r+i} = -f_i.
struct CornerVectors {
  std::vector<Matrix> u;  // 1 x r each
  std::vector<Matrix> v;
};

inline CornerVectors corner_vectors(std::size_t r) {
  CornerVectors cv;
  for (std::size_t half = 0; half < 2; ++half)
    for (std::size_t i = 0; i < r; ++i) {
      Matrix u(1, r), v(1, r);
      u(0, i) = 1;
      v(0, i) = half == 0 ? 1 : -1;
      cv.u.push_back(std::move(u));
      cv.v.push_back(std::move(v));
    }
  return cv;
}

/// The nilpotent corner family plus one: e_0 = diag(-1, I_{n-2}, -1)
/// followed by 2n - 4 matrices with u_i in row 0 (columns 1..n-2) and v_i^t
/// in column n-1 (rows 1..n-2). Total 2n - 3 members, all squares nonzero.
inline MatrixFamily corner_family(std::size_t n) {
  if (n < 3) throw PreconditionError("corner_family: n must be at least 3");
  const std::size_t r = n - 2;
  std::vector<Matrix> out;
  std::vector<Scalar> d(n, Scalar(1));
  d.front() = -1;
  d.back() = -1;
  out.push_back(Matrix::diagonal(d));
  const CornerVectors cv = corner_vectors(r);
  for (std::size_t i = 0; i < 2 * r; ++i) {
    Matrix e(n, n);
    for (std::size_t t = 0; t < r; ++t) {
      e(0, 1 + t) = cv.u[i](0, t);
      e(1 + t, n - 1) = cv.v[i](0, t);
    }
    out.push_back(std::move(e));
  }
  return {n, std::move(out), "corner n=" + std::to_string(n)};
}

/// e_i(1) (+) 0 for every member of f1, then 0 (+) e_j(2) for f2.
inline MatrixFamily direct_sum_families(const MatrixFamily& f1, const MatrixFamily& f2) {
  if (!is_anticommuting(f1) || !is_anticommuting(f2))
    throw PreconditionError("direct_sum_families: inputs must be anticommuting");
  const Matrix z1 = Matrix::zero(f1.n(), f1.n());
  const Matrix z2 = Matrix::zero(f2.n(), f2.n());
  std::vector<Matrix> out;
  out.reserve(f1.size() + f2.size());
  for (const auto& e : f1.members()) out.push_back(direct_sum(e, z2));
  for (const auto& e : f2.members()) out.push_back(direct_sum(z1, e));
  return {f1.n() + f2.n(), std::move(out), "dsum(" + f1.label() + ", " + f2.label() + ")"};
}

}  // namespace acfam
