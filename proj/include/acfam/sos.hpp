#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "acfam/bounds.hpp"
#include "acfam/family.hpp"
#include "acfam/family_io.hpp"

namespace acfam {

/// A bilinear sum-of-squares formula
///   (x_1^2 + ... + x_k^2)(y_1^2 + ... + y_k^2) = f_1^2 + ... + f_n^2,
///   f_l = sum_{i,j} c[i][j][l] x_i y_j.
/// The coefficient tensor is the source of truth; the Hurwitz matrices A_i
/// (k x n, (A_i)_{j,l} = c[i][j][l]) are derived from it.
class SosFormula {
 public:
  SosFormula() = default;
  SosFormula(std::size_t k, std::size_t n) : k_(k), n_(n), tensor_(k * k * n) { rebuild(); }
  SosFormula(std::size_t k, std::size_t n, std::vector<Scalar> tensor) : k_(k), n_(n), tensor_(std::move(tensor)) {
    if (tensor_.size() != k_ * k_ * n_) throw ShapeError("SosFormula: tensor size must be k*k*n");
    rebuild();
  }

  std::size_t k() const { return k_; }
  std::size_t n() const { return n_; }
  const Scalar& c(std::size_t i, std::size_t j, std::size_t l) const { return tensor_[(i * k_ + j) * n_ + l]; }
  const std::vector<Scalar>& tensor() const { return tensor_; }
  const std::vector<Matrix>& hurwitz() const { return hurwitz_; }

  SosFormula with_coefficient(std::size_t i, std::size_t j, std::size_t l, const Scalar& v) const {
    std::vector<Scalar> t = tensor_;
    t[(i * k_ + j) * n_ + l] = v;
    return {k_, n_, std::move(t)};
  }

  /// Both views describe the same coefficients.
  bool views_consistent() const {
    if (hurwitz_.size() != k_) return false;
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t j = 0; j < k_; ++j)
        for (std::size_t l = 0; l < n_; ++l)
          if (!(hurwitz_[i](j, l) == c(i, j, l))) return false;
    return true;
  }

  friend bool operator==(const SosFormula& a, const SosFormula& b) {
    return a.k_ == b.k_ && a.n_ == b.n_ && a.tensor_ == b.tensor_;
  }

 private:
  void rebuild() {
    hurwitz_.assign(k_, Matrix(k_, n_));
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t j = 0; j < k_; ++j)
        for (std::size_t l = 0; l < n_; ++l) hurwitz_[i](j, l) = c(i, j, l);
  }

  std::size_t k_ = 0;
  std::size_t n_ = 0;
  std::vector<Scalar> tensor_;
  std::vector<Matrix> hurwitz_;
};

/// Expands f_1^2 + ... + f_n^2 into coefficients of the quartic monomials
/// x_i x_i' y_j y_j' (i <= i', j <= j') and compares with the left side,
/// whose only monomials are x_i^2 y_j^2 with coefficient 1.
inline bool verify_by_expansion(const SosFormula& f) {
  using Key = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>;
  std::map<Key, Scalar> coeff;
  struct Term {
    std::size_t i, j;
    Scalar c;
  };
  for (std::size_t l = 0; l < f.n(); ++l) {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < f.k(); ++i)
      for (std::size_t j = 0; j < f.k(); ++j)
        if (!f.c(i, j, l).is_zero()) terms.push_back({i, j, f.c(i, j, l)});
    for (const auto& a : terms)
      for (const auto& b : terms) {
        Key key{std::min(a.i, b.i), std::max(a.i, b.i), std::min(a.j, b.j), std::max(a.j, b.j)};
        coeff[key] += a.c * b.c;
      }
  }
  for (std::size_t i = 0; i < f.k(); ++i)
    for (std::size_t j = 0; j < f.k(); ++j) coeff[Key{i, i, j, j}] -= 1;
  for (const auto& [key, value] : coeff)
    if (!value.is_zero()) return false;
  return true;
}

/// A_i A_i^t = I_k and A_i A_j^t = -A_j A_i^t for i != j.
inline bool verify_hurwitz_equations(const SosFormula& f) {
  const auto& a = f.hurwitz();
  std::vector<Matrix> at;
  for (const auto& m : a) at.push_back(transpose(m));
  const Matrix id = Matrix::identity(f.k());
  for (std::size_t i = 0; i < f.k(); ++i) {
    if (!(mat_mul(a[i], at[i]) == id)) return false;
    for (std::size_t j = i + 1; j < f.k(); ++j)
      if (!(mat_mul(a[i], at[j]) + mat_mul(a[j], at[i])).is_zero()) return false;
  }
  return true;
}

inline bool is_valid(const SosFormula& f) { return verify_hurwitz_equations(f); }

namespace detail {

// Cayley-Dickson product on R^(2^m): (a, b)(c, d) = (ac - d* b, da + b c*),
// with (a, b)* = (a*, -b) and the identity conjugation on R.
inline std::vector<Scalar> cd_conj(const std::vector<Scalar>& x) {
  std::vector<Scalar> out = x;
  for (std::size_t t = 1; t < out.size(); ++t) out[t] = -out[t];
  return out;
}

inline std::vector<Scalar> cd_mul(const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
  const std::size_t s = x.size();
  if (s == 1) return {x[0] * y[0]};
  const std::size_t h = s / 2;
  std::vector<Scalar> a(x.begin(), x.begin() + static_cast<long>(h)), b(x.begin() + static_cast<long>(h), x.end());
  std::vector<Scalar> c(y.begin(), y.begin() + static_cast<long>(h)), d(y.begin() + static_cast<long>(h), y.end());
  std::vector<Scalar> lo = cd_mul(a, c), lo2 = cd_mul(cd_conj(d), b);
  std::vector<Scalar> hi = cd_mul(d, a), hi2 = cd_mul(b, cd_conj(c));
  std::vector<Scalar> out(s);
  for (std::size_t t = 0; t < h; ++t) {
    out[t] = lo[t] - lo2[t];
    out[h + t] = hi[t] + hi2[t];
  }
  return out;
}

}  // namespace detail

/// The composition formulas of R, C, the quaternions and the octonions, with
/// c[i][j][l] the e_l-coordinate of e_i e_j in the Cayley-Dickson algebra of
/// dimension k (product (a, b)(c, d) = (ac - d* b, da + b c*)). n = k.
inline SosFormula builtin_formula(std::size_t k) {
  if (k != 1 && k != 2 && k != 4 && k != 8) throw PreconditionError("builtin_formula: k must be 1, 2, 4 or 8");
  std::vector<Scalar> tensor(k * k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<Scalar> ei(k), ej(k);
      ei[i] = 1;
      ej[j] = 1;
      const auto prod = detail::cd_mul(ei, ej);
      for (std::size_t l = 0; l < k; ++l) tensor[(i * k + j) * k + l] = prod[l];
    }
  return {k, k, std::move(tensor)};
}

/// (2k + n)-dimensional nilpotent family with block rows/columns (k, n, k):
/// e_i has A_i in block (0, 1) and A_i^t in block (1, 2). Then
/// e_i e_j has the single block A_i A_j^t in position (0, 2), so the family
/// anticommutes, every e_i^2 = I_k in the corner (rank k) and e_i^3 = 0.
inline MatrixFamily formula_to_family(const SosFormula& f) {
  if (!is_valid(f)) throw PreconditionError("formula_to_family: formula is not valid");
  const std::size_t k = f.k(), n = f.n();
  const std::size_t dim = 2 * k + n;
  std::vector<Matrix> out;
  for (const auto& a : f.hurwitz()) {
    Matrix e(dim, dim);
    set_block(e, 0, k, a);
    set_block(e, k, k + n, transpose(a));
    out.push_back(std::move(e));
  }
  return {dim, std::move(out), "sos k=" + std::to_string(k) + " n=" + std::to_string(n)};
}

/// For square formulas (n = k): the k - 1 matrices A_i A_k^t, i < k, which
/// are invertible and anticommute. Checks k - 1 <= 2 v2(k) + 1.
inline MatrixFamily formula_to_invertibles(const SosFormula& f) {
  if (f.n() != f.k()) throw PreconditionError("formula_to_invertibles: requires n = k");
  if (!is_valid(f)) throw PreconditionError("formula_to_invertibles: formula is not valid");
  const std::size_t k = f.k();
  std::vector<Matrix> out;
  if (k > 0) {
    const Matrix last_t = transpose(f.hurwitz()[k - 1]);
    for (std::size_t i = 0; i + 1 < k; ++i) out.push_back(mat_mul(f.hurwitz()[i], last_t));
  }
  MatrixFamily fam(k, std::move(out), "invertibles k=" + std::to_string(k));
  if (!is_anticommuting(fam) || !all_invertible(fam))
    throw InternalError("formula_to_invertibles: result is not an invertible anticommuting family");
  if (k > 0 && fam.size() > invertible_bound(k))
    throw InternalError("formula_to_invertibles: k - 1 exceeds the invertible-family bound");
  return fam;
}

/// sosf-v1: fixed key order; each "tensor" slice c[i] on its own line.
inline std::string serialize_formula(const SosFormula& f) {
  std::string out = "{\n";
  out += "  \"format\": \"sosf-v1\",\n";
  out += "  \"k\": " + std::to_string(f.k()) + ",\n";
  out += "  \"n\": " + std::to_string(f.n()) + ",\n";
  if (f.k() == 0) {
    out += "  \"tensor\": []\n";
  } else {
    out += "  \"tensor\": [\n";
    for (std::size_t i = 0; i < f.k(); ++i) {
      out += "    " + io::compact_matrix(f.hurwitz()[i]);
      out += i + 1 < f.k() ? ",\n" : "\n";
    }
    out += "  ]\n";
  }
  out += "}\n";
  return out;
}

inline SosFormula formula_from_json(const io::json& j) {
  if (!j.is_object()) throw ParseError("formula file must be a JSON object");
  if (!j.contains("format") || j["format"] != "sosf-v1") throw ParseError("format must be \"sosf-v1\"");
  const std::size_t k = io::require_count(j, "k");
  const std::size_t n = io::require_count(j, "n");
  if (!j.contains("tensor") || !j["tensor"].is_array() || j["tensor"].size() != k)
    throw ParseError("\"tensor\" must be an array of k slices");
  std::vector<Scalar> tensor(k * k * n);
  for (std::size_t i = 0; i < k; ++i) {
    const Matrix slice = io::matrix_from_json(j["tensor"][i], k, n, "tensor slice " + std::to_string(i));
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t l = 0; l < n; ++l) tensor[(i * k + a) * n + l] = slice(a, l);
  }
  SosFormula f(k, n, std::move(tensor));
  if (!f.views_consistent()) throw InternalError("sosf-v1: Hurwitz view disagrees with tensor");
  return f;
}

inline SosFormula parse_formula(const std::string& text) { return formula_from_json(io::parse_json_text(text)); }

inline SosFormula load_formula(const std::string& path) { return parse_formula(io::read_file(path)); }

}  // namespace acfam
