#pragma once

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "acfam/errors.hpp"

namespace acfam {

/// Exact complex number a + b*i with arbitrary-precision rational parts,
/// i.e. an element of Q(i). Both parts are kept canonical (lowest terms,
/// positive denominator), so equality is structural.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long value) : re_(value) {}  // NOLINT(implicit)
  GaussianRational(int value) : re_(value) {}   // NOLINT(implicit)
  GaussianRational(mpq_class re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }
  GaussianRational(long num, long den) : re_(num, den) { re_.canonicalize(); }

  static GaussianRational imaginary_unit() { return {mpq_class(0), mpq_class(1)}; }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return sgn(im_) == 0 && re_ == 1; }

  GaussianRational conj() const { return {re_, mpq_class(-im_)}; }

  /// |z|^2 as an exact rational.
  mpq_class norm() const { return mpq_class(re_ * re_ + im_ * im_); }

  GaussianRational inverse() const {
    if (is_zero()) throw DomainError("inverse of zero");
    if (is_real()) return GaussianRational(mpq_class(1 / re_));
    mpq_class n = norm();
    return {mpq_class(re_ / n), mpq_class(-im_ / n)};
  }

  GaussianRational operator-() const { return {mpq_class(-re_), mpq_class(-im_)}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    if (sgn(o.im_) != 0) im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    if (sgn(o.im_) != 0) im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    *this = *this * o;
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    *this = *this / o;
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }

  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    GaussianRational r;
    if (a.is_zero() || b.is_zero()) return r;
    const bool ar = a.is_real();
    const bool br = b.is_real();
    if (ar && br) {
      r.re_ = a.re_ * b.re_;
    } else if (ar) {
      r.re_ = a.re_ * b.re_;
      r.im_ = a.re_ * b.im_;
    } else if (br) {
      r.re_ = a.re_ * b.re_;
      r.im_ = a.im_ * b.re_;
    } else {
      r.re_ = a.re_ * b.re_ - a.im_ * b.im_;
      r.im_ = a.re_ * b.im_ + a.im_ * b.re_;
    }
    return r;
  }

  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    if (b.is_zero()) throw DomainError("division by zero");
    if (b.is_real()) return {mpq_class(a.re_ / b.re_), mpq_class(a.im_ / b.re_)};
    return a * b.inverse();
  }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// Total order used only for deterministic sorting: by norm, then re, then im.
  friend bool canonical_less(const GaussianRational& a, const GaussianRational& b) {
    mpq_class na = a.norm(), nb = b.norm();
    if (na != nb) return na < nb;
    if (a.re_ != b.re_) return a.re_ < b.re_;
    return a.im_ < b.im_;
  }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

using Scalar = GaussianRational;

namespace detail {

inline std::string rational_text(const mpq_class& q) { return q.get_str(10); }

// RAT := ["-"] DIGITS ["/" DIGITS]
inline bool parse_rat(std::string_view s, std::size_t& pos, mpq_class& out, bool allow_sign) {
  std::size_t p = pos;
  bool neg = false;
  if (allow_sign && p < s.size() && s[p] == '-') {
    neg = true;
    ++p;
  }
  std::size_t start = p;
  while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
  if (p == start) return false;
  std::string text(s.substr(start, p - start));
  if (p < s.size() && s[p] == '/') {
    std::size_t dstart = ++p;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
    if (p == dstart) return false;
    std::string den(s.substr(dstart, p - dstart));
    if (mpz_class(den) == 0) throw ParseError("zero denominator in scalar '" + std::string(s) + "'");
    text += "/" + den;
  }
  out = mpq_class(text, 10);
  out.canonicalize();
  if (neg) out = -out;
  pos = p;
  return true;
}

}  // namespace detail

/// Parses the scalar text grammar
///   RAT    := ["-"] DIGITS ["/" DIGITS]
///   SCALAR := RAT | RAT ("+"|"-") RAT "i" | ["-"] RAT "i" | "i"
/// and additionally accepts an omitted unit coefficient ("-i", "2+i").
inline GaussianRational parse_scalar(std::string_view s) {
  auto fail = [&]() -> GaussianRational { throw ParseError("malformed scalar '" + std::string(s) + "'"); };
  if (s.empty()) return fail();
  std::size_t pos = 0;
  mpq_class first;
  if (s == "i") return GaussianRational::imaginary_unit();
  if (s == "-i") return -GaussianRational::imaginary_unit();
  if (!detail::parse_rat(s, pos, first, true)) return fail();
  if (pos == s.size()) return GaussianRational(first);
  if (s[pos] == 'i') {
    if (pos + 1 != s.size()) return fail();
    return {mpq_class(0), first};
  }
  if (s[pos] != '+' && s[pos] != '-') return fail();
  const bool neg = s[pos] == '-';
  ++pos;
  mpq_class second(1);
  if (pos < s.size() && s[pos] != 'i') {
    if (!detail::parse_rat(s, pos, second, false)) return fail();
  }
  if (pos + 1 != s.size() || s[pos] != 'i') return fail();
  if (neg) second = -second;
  return {first, second};
}

/// Canonical text form. Always within the strict grammar: the bare unit
/// "i" is the only form without an explicit coefficient.
inline std::string to_string(const GaussianRational& z) {
  const auto& re = z.re();
  const auto& im = z.im();
  if (sgn(im) == 0) return detail::rational_text(re);
  if (sgn(re) == 0) {
    if (im == 1) return "i";
    return detail::rational_text(im) + "i";
  }
  std::string out = detail::rational_text(re);
  if (sgn(im) > 0) {
    out += "+" + detail::rational_text(im);
  } else {
    out += "-" + detail::rational_text(mpq_class(-im));
  }
  return out + "i";
}

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << to_string(z); }

}  // namespace acfam
