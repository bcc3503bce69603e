#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "acfam/family.hpp"
#include "acfam/spectrum.hpp"

namespace acfam {

struct SplitResult {
  Matrix basis;  // V with V e_j V^{-1} = left_j (+) right_j for every j
  MatrixFamily left;
  MatrixFamily right;
  Scalar eigenvalue;  // representative of the +-class that was split off
};

namespace detail {

struct PmClass {
  Scalar lambda;
  std::size_t mult_plus = 0;
  std::size_t mult_minus = 0;
  std::size_t size() const { return mult_plus + mult_minus; }
};

// +-classes {lambda, -lambda} present in a spectrum, lowest norm first.
inline std::vector<PmClass> pm_classes(const SpectrumReport& spec) {
  std::vector<PmClass> out;
  std::vector<bool> used(spec.found.size(), false);
  for (std::size_t a = 0; a < spec.found.size(); ++a) {
    if (used[a]) continue;
    used[a] = true;
    PmClass c{spec.found[a].first, spec.found[a].second, 0};
    if (!c.lambda.is_zero()) {
      const Scalar neg = -c.lambda;
      for (std::size_t b = a + 1; b < spec.found.size(); ++b)
        if (!used[b] && spec.found[b].first == neg) {
          used[b] = true;
          c.mult_minus = spec.found[b].second;
        }
    }
    out.push_back(std::move(c));
  }
  return out;
}

inline Matrix shifted(const Matrix& a, const Scalar& s) {
  Matrix m = a;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) -= s;
  return m;
}

// p(A) with p = (x - lambda)^{m+} (x + lambda)^{m-}, or x^{m+} for lambda = 0.
inline Matrix class_polynomial_at(const Matrix& a, const PmClass& c) {
  Matrix p = mat_pow(shifted(a, c.lambda), c.mult_plus);
  if (c.mult_minus > 0) p = mat_mul(p, mat_pow(shifted(a, -c.lambda), c.mult_minus));
  return p;
}

inline std::optional<SplitResult> split_on(const MatrixFamily& fam, std::size_t i, const PmClass& c) {
  const std::size_t n = fam.n();
  const std::size_t d = c.size();
  if (d == 0 || d >= n) return std::nullopt;
  // ker p(A) and im p(A) = ker q(A) are complementary A-invariant subspaces
  // because gcd(p, q) = 1.
  const Matrix p_at = class_polynomial_at(fam[i], c);
  const Matrix ker = kernel_basis(p_at);
  const Matrix img = column_space_basis(p_at);
  if (ker.cols() != d || img.cols() != n - d) throw InternalError("spectral_split: invariant subspace dimensions disagree with char_poly");
  const Matrix b = hstack(ker, img);
  const Matrix v = inverse(b);
  std::vector<Matrix> left, right;
  for (const auto& e : fam.members()) {
    const Matrix ce = conjugate_with_inverse(e, v, b);
    if (!block(ce, 0, d, d, n - d).is_zero() || !block(ce, d, 0, n - d, d).is_zero())
      throw InternalError("spectral_split: conjugated member is not block diagonal");
    left.push_back(block(ce, 0, 0, d, d));
    right.push_back(block(ce, d, d, n - d, n - d));
  }
  return SplitResult{v, MatrixFamily(d, std::move(left), fam.label() + "[L]"),
                     MatrixFamily(n - d, std::move(right), fam.label() + "[R]"), c.lambda};
}

inline std::optional<SplitResult> split_member(const MatrixFamily& fam, std::size_t i) {
  const SpectrumReport spec = gaussian_rational_spectrum(fam[i]);
  for (const auto& c : pm_classes(spec))
    if (auto r = split_on(fam, i, c)) return r;
  return std::nullopt;
}

}  // namespace detail

/// Splits the family along the generalised eigenspaces of member i: the
/// lowest-norm +-eigenvalue class {lambda, -lambda} of e_i in Q(i) whose
/// multiplicity is less than n. Anticommutation forces every other member to
/// respect the splitting. Returns nothing when no such class exists.
inline std::optional<SplitResult> spectral_split(const MatrixFamily& fam, std::size_t i) {
  if (i >= fam.size()) throw PreconditionError("spectral_split: member index out of range");
  if (!is_anticommuting(fam)) throw PreconditionError("spectral_split: family is not anticommuting");
  return detail::split_member(fam, i);
}

struct DecompositionBlock {
  std::size_t offset;
  std::size_t size;
  MatrixFamily family;
};

/// V e_i V^{-1} = (+)_b blocks[b].family[i] for every member i.
struct Decomposition {
  Matrix basis;
  std::vector<DecompositionBlock> blocks;
  // Every member of every block has its whole spectrum in Q(i); when false an
  // irrational eigenvalue class might still admit a split we cannot see.
  bool exhausted = true;
};

namespace detail {

inline bool spectra_fully_split(const MatrixFamily& fam) {
  for (const auto& e : fam.members())
    if (!gaussian_rational_spectrum(e).fully_split) return false;
  return true;
}

struct PartialDecomposition {
  Matrix basis;
  std::vector<MatrixFamily> blocks;
  bool exhausted;
};

inline PartialDecomposition decompose_rec(const MatrixFamily& fam) {
  for (std::size_t i = 0; i < fam.size(); ++i) {
    auto split = split_member(fam, i);
    if (!split) continue;
    PartialDecomposition l = decompose_rec(split->left);
    PartialDecomposition r = decompose_rec(split->right);
    PartialDecomposition out{mat_mul(direct_sum(l.basis, r.basis), split->basis), std::move(l.blocks),
                             l.exhausted && r.exhausted};
    for (auto& b : r.blocks) out.blocks.push_back(std::move(b));
    return out;
  }
  return {Matrix::identity(fam.n()), {fam}, spectra_fully_split(fam)};
}

}  // namespace detail

/// Repeated spectral splitting until no member of any block splits further.
/// Sound but incomplete: a single resulting block means "spectrally
/// irreducible", not irreducible.
inline Decomposition decompose(const MatrixFamily& fam) {
  if (!is_anticommuting(fam)) throw PreconditionError("decompose: family is not anticommuting");
  detail::PartialDecomposition p = detail::decompose_rec(fam);
  Decomposition d{std::move(p.basis), {}, p.exhausted};
  std::size_t offset = 0;
  for (auto& b : p.blocks) {
    const std::size_t size = b.n();
    d.blocks.push_back({offset, size, std::move(b)});
    offset += size;
  }
  return d;
}

/// Rebuilds the original members from a decomposition:
/// V^{-1} ((+)_b block_b[i]) V.
inline MatrixFamily reassemble(const Decomposition& d, std::size_t n) {
  const std::size_t k = d.blocks.empty() ? 0 : d.blocks.front().family.size();
  const Matrix v_inv = inverse(d.basis);
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < k; ++i) {
    Matrix diag(n, n);
    for (const auto& b : d.blocks) set_block(diag, b.offset, b.offset, b.family[i]);
    out.push_back(conjugate_with_inverse(diag, v_inv, d.basis));
  }
  return {n, std::move(out)};
}

struct Invertible {
  Scalar lambda;  // spectrum within {lambda, -lambda}
};
struct Nilpotent {};
struct Unclassified {};
using MemberClass = std::variant<Invertible, Nilpotent, Unclassified>;

struct IrreducibilityReport {
  std::vector<MemberClass> per_member_class;
  bool spectra_pm_pairs = true;
  bool multiplicity_half_ok = true;
};

namespace detail {
// The member of {z, -z} with positive real part, or positive imaginary part
// when purely imaginary.
inline Scalar pm_representative(const Scalar& z) {
  if (sgn(z.re()) < 0 || (sgn(z.re()) == 0 && sgn(z.im()) < 0)) return -z;
  return z;
}
}  // namespace detail

/// Classifies the members of a spectrally irreducible family: each has
/// spectrum inside some {lambda, -lambda}, so is invertible or nilpotent, and
/// when two or more are invertible every invertible member has lambda with
/// multiplicity exactly n/2.
inline IrreducibilityReport classify_irreducible(const MatrixFamily& fam) {
  const Decomposition d = decompose(fam);
  if (d.blocks.size() != 1 || !d.exhausted)
    throw PreconditionError("classify_irreducible: family is not spectrally irreducible");
  IrreducibilityReport rep;
  const std::size_t n = fam.n();
  std::vector<std::pair<std::size_t, Scalar>> invertibles;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const SpectrumReport spec = gaussian_rational_spectrum(fam[i]);
    const auto classes = detail::pm_classes(spec);
    MemberClass cls = Unclassified{};
    if (spec.fully_split && classes.size() == 1) {
      if (classes.front().lambda.is_zero()) {
        cls = Nilpotent{};
      } else {
        const Scalar lambda = detail::pm_representative(classes.front().lambda);
        cls = Invertible{lambda};
        invertibles.emplace_back(i, lambda);
      }
    }
    if (std::holds_alternative<Unclassified>(cls)) rep.spectra_pm_pairs = false;
    rep.per_member_class.push_back(std::move(cls));
  }
  if (invertibles.size() >= 2) {
    if (n % 2 != 0) {
      rep.multiplicity_half_ok = false;
    } else {
      for (const auto& [i, lambda] : invertibles) {
        const SpectrumReport spec = gaussian_rational_spectrum(fam[i]);
        if (spec.multiplicity(lambda) != n / 2 || spec.multiplicity(-lambda) != n / 2)
          rep.multiplicity_half_ok = false;
      }
    }
  }
  return rep;
}

namespace detail {

// Span of vectors kept in reduced row echelon form, which makes its basis
// canonical for the subspace.
class EchelonSpan {
 public:
  explicit EchelonSpan(std::size_t dim) : dim_(dim) {}

  std::size_t size() const { return rows_.size(); }
  const std::vector<std::vector<Scalar>>& basis() const { return rows_; }

  std::vector<Scalar> reduce(std::vector<Scalar> v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Scalar f = v[pivots_[r]];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < dim_; ++j)
        if (!rows_[r][j].is_zero()) v[j] -= f * rows_[r][j];
    }
    return v;
  }

  bool contains(const std::vector<Scalar>& v) const { return is_zero_vector(reduce(v)); }

  bool insert(const std::vector<Scalar>& v) {
    std::vector<Scalar> w = reduce(v);
    std::size_t p = 0;
    while (p < dim_ && w[p].is_zero()) ++p;
    if (p == dim_) return false;
    const Scalar inv = w[p].inverse();
    for (auto& x : w)
      if (!x.is_zero()) x = x * inv;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Scalar f = rows_[r][p];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < dim_; ++j)
        if (!w[j].is_zero()) rows_[r][j] -= f * w[j];
    }
    // keep rows ordered by pivot
    std::size_t at = 0;
    while (at < pivots_.size() && pivots_[at] < p) ++at;
    rows_.insert(rows_.begin() + static_cast<long>(at), std::move(w));
    pivots_.insert(pivots_.begin() + static_cast<long>(at), p);
    return true;
  }

  static bool is_zero_vector(const std::vector<Scalar>& v) {
    for (const auto& x : v)
      if (!x.is_zero()) return false;
    return true;
  }

 private:
  std::size_t dim_;
  std::vector<std::vector<Scalar>> rows_;
  std::vector<std::size_t> pivots_;
};

inline std::vector<Scalar> apply(const Matrix& a, const std::vector<Scalar>& v) {
  std::vector<Scalar> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero() && !v[j].is_zero()) out[i] += a(i, j) * v[j];
  return out;
}

}  // namespace detail

/// For an anticommuting family of nilpotent matrices, returns V such that
/// every V e_i V^{-1} is strictly upper triangular.
///
/// Builds the descending chain W_0 = whole space, W_{t+1} = span{e_i w :
/// w in W_t}, which reaches 0 because the generated algebra is nilpotent,
/// and orders a basis from the deepest W_t outward; each member maps every
/// basis vector into the span of the ones before it.
inline Matrix simultaneous_triangularize(const MatrixFamily& fam) {
  if (!is_anticommuting(fam)) throw PreconditionError("simultaneous_triangularize: family is not anticommuting");
  for (std::size_t i = 0; i < fam.size(); ++i)
    if (!is_nilpotent(fam[i]))
      throw PreconditionError("simultaneous_triangularize: member " + std::to_string(i) + " is not nilpotent");
  const std::size_t n = fam.n();
  std::vector<detail::EchelonSpan> chain;
  chain.emplace_back(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Scalar> f(n);
    f[j] = 1;
    chain.back().insert(f);
  }
  while (chain.back().size() > 0) {
    if (chain.size() > n + 1) throw InternalError("family algebra not nilpotent");
    detail::EchelonSpan next(n);
    for (const auto& w : chain.back().basis())
      for (const auto& e : fam.members()) next.insert(detail::apply(e, w));
    if (next.size() >= chain.back().size()) throw InternalError("family algebra not nilpotent");
    chain.push_back(std::move(next));
  }
  detail::EchelonSpan adapted(n);
  std::vector<std::vector<Scalar>> ordered;
  for (std::size_t t = chain.size(); t-- > 0;)
    for (const auto& w : chain[t].basis())
      if (adapted.insert(w)) ordered.push_back(w);
  Matrix p(n, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) p(r, c) = ordered[c][r];
  return inverse(p);
}

inline bool is_strictly_upper(const Matrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j <= i && j < a.cols(); ++j)
      if (!a(i, j).is_zero()) return false;
  return true;
}

}  // namespace acfam
