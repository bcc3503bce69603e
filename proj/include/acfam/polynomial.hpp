#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "acfam/errors.hpp"
#include "acfam/matrix.hpp"
#include "acfam/scalar.hpp"

namespace acfam {

/// Univariate polynomial over Q(i), coefficients lowest degree first.
/// Trailing zero coefficients are always trimmed; the zero polynomial has
/// no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<Scalar> coeffs) : coeffs_(coeffs) { trim(); }

  static Polynomial constant(const Scalar& c) { return Polynomial(std::vector<Scalar>{c}); }
  /// x^k
  static Polynomial monomial(std::size_t k, const Scalar& c = 1) {
    std::vector<Scalar> v(k + 1);
    v[k] = c;
    return Polynomial(std::move(v));
  }
  /// x - root
  static Polynomial linear(const Scalar& root) { return Polynomial({-root, Scalar(1)}); }

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Scalar>& coeffs() const { return coeffs_; }
  Scalar coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Scalar{}; }
  Scalar leading() const { return coeffs_.empty() ? Scalar{} : coeffs_.back(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back().is_one(); }

  /// Multiplicity of 0 as a root (number of vanishing low coefficients).
  std::size_t low_order() const {
    std::size_t k = 0;
    while (k < coeffs_.size() && coeffs_[k].is_zero()) ++k;
    return k;
  }

  Scalar operator()(const Scalar& x) const {
    Scalar acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial monic() const {
    if (is_zero()) return {};
    const Scalar inv = leading().inverse();
    std::vector<Scalar> v(coeffs_.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = coeffs_[k] * inv;
    return Polynomial(std::move(v));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.coeff(k) + b.coeff(k);
    return Polynomial(std::move(v));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.coeff(k) - b.coeff(k);
    return Polynomial(std::move(v));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> v(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        if (!b.coeffs_[j].is_zero()) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(v));
  }
  friend Polynomial operator*(const Scalar& s, const Polynomial& a) { return Polynomial::constant(s) * a; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }
  std::vector<Scalar> coeffs_;
};

/// Quotient and remainder of a by nonzero b.
inline std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.degree() < b.degree()) return {Polynomial{}, a};
  std::vector<Scalar> rem = a.coeffs();
  const std::size_t db = static_cast<std::size_t>(b.degree());
  std::vector<Scalar> quo(rem.size() - db);
  const Scalar inv = b.leading().inverse();
  for (std::size_t k = rem.size(); k-- > db;) {
    if (rem[k].is_zero()) continue;
    const Scalar f = rem[k] * inv;
    quo[k - db] = f;
    for (std::size_t j = 0; j <= db; ++j)
      if (!b.coeffs()[j].is_zero()) rem[k - db + j] -= f * b.coeffs()[j];
  }
  rem.resize(db);
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

/// Monic greatest common divisor (zero if both are zero).
inline Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline Polynomial pow(const Polynomial& p, std::size_t e) {
  Polynomial result = Polynomial::constant(1);
  Polynomial base = p;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

/// p(A) by Horner's rule.
inline Matrix evaluate(const Polynomial& p, const Matrix& a) {
  require_square(a, "evaluate");
  const std::size_t n = a.rows();
  Matrix acc(n, n);
  const auto& c = p.coeffs();
  for (std::size_t k = c.size(); k-- > 0;) {
    acc = mat_mul(acc, a);
    if (!c[k].is_zero())
      for (std::size_t i = 0; i < n; ++i) acc(i, i) += c[k];
  }
  return acc;
}

inline std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t k = p.coeffs().size(); k-- > 0;) {
    const Scalar& c = p.coeffs()[k];
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string cs = to_string(c);
    if (k == 0) {
      out += cs;
    } else {
      if (!c.is_one()) out += (c.is_real() ? cs : "(" + cs + ")") + "*";
      out += k == 1 ? "x" : "x^" + std::to_string(k);
    }
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << to_string(p); }

}  // namespace acfam
