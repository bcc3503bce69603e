#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "acfam/elimination.hpp"
#include "acfam/gaussian_integer.hpp"
#include "acfam/polynomial.hpp"

namespace acfam {

/// Exact characteristic polynomial det(xI - a).
///
/// Reduces `a` to upper Hessenberg form by elimination similarities, then
/// expands det(xI - H) with the recurrence over its
/// leading principal minors. O(n^3) field operations.
inline Polynomial char_poly(const Matrix& a) {
  require_square(a, "char_poly");
  const std::size_t n = a.rows();
  Matrix h = a;
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t p = j + 1;
    while (p < n && h(p, j).is_zero()) ++p;
    if (p == n) continue;
    if (p != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(h(p, c), h(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(h(r, p), h(r, j + 1));
    }
    const Scalar inv = h(j + 1, j).inverse();
    for (std::size_t r = j + 2; r < n; ++r) {
      if (h(r, j).is_zero()) continue;
      const Scalar f = h(r, j) * inv;
      for (std::size_t c = 0; c < n; ++c)
        if (!h(j + 1, c).is_zero()) h(r, c) -= f * h(j + 1, c);
      for (std::size_t rr = 0; rr < n; ++rr)
        if (!h(rr, r).is_zero()) h(rr, j + 1) += f * h(rr, r);
    }
  }

  // minors[m] = det(xI - H[0..m, 0..m])
  std::vector<Polynomial> minors;
  minors.reserve(n + 1);
  minors.push_back(Polynomial::constant(1));
  for (std::size_t m = 0; m < n; ++m) {
    Polynomial next = Polynomial::linear(h(m, m)) * minors[m];
    Scalar sub_product = 1;
    for (std::size_t i = m; i-- > 0;) {
      sub_product = sub_product * h(i + 1, i);
      if (sub_product.is_zero()) break;
      if (h(i, m).is_zero()) continue;
      next = next - Polynomial::constant(h(i, m) * sub_product) * minors[i];
    }
    minors.push_back(std::move(next));
  }
  return minors[n];
}

/// Roots of a characteristic polynomial that lie in Q(i), with algebraic
/// multiplicities, sorted by (norm, re, im).
struct SpectrumReport {
  std::vector<std::pair<Scalar, std::size_t>> found;
  bool fully_split = false;

  std::size_t multiplicity(const Scalar& lambda) const {
    for (const auto& [v, m] : found)
      if (v == lambda) return m;
    return 0;
  }
};

namespace detail {

inline std::size_t strip_root(Polynomial& p, const Scalar& lambda) {
  std::size_t mult = 0;
  const Polynomial lin = Polynomial::linear(lambda);
  while (p.degree() > 0) {
    auto [q, r] = divmod(p, lin);
    if (!r.is_zero()) break;
    p = std::move(q);
    ++mult;
  }
  return mult;
}

}  // namespace detail

/// Q(i)-roots of an arbitrary nonzero polynomial.
///
/// After removing the factor x^m, the coefficients are scaled to Gaussian
/// integers c_0..c_d. Any root a/b in lowest terms has a | c_0 and b | c_d
/// (Z[i] is a UFD), so all such quotients are tested exactly and each hit is
/// divided out with its multiplicity.
inline SpectrumReport polynomial_roots(const Polynomial& poly) {
  SpectrumReport out;
  if (poly.is_zero()) throw DomainError("roots of the zero polynomial");
  const std::size_t degree = static_cast<std::size_t>(poly.degree());
  Polynomial rest = poly;
  std::size_t total = 0;
  if (const std::size_t m0 = rest.low_order(); m0 > 0) {
    out.found.emplace_back(Scalar{}, m0);
    total += m0;
    rest = divmod(rest, Polynomial::monomial(m0)).first;
  }
  if (rest.degree() > 0) {
    mpz_class l = detail::row_denominator_lcm(rest.coeffs());
    GaussianInteger c0 = to_gaussian_integer(rest.coeffs().front(), l);
    GaussianInteger cd = to_gaussian_integer(rest.coeffs().back(), l);
    auto num_divs = divisors_up_to_units(factor(c0));
    auto den_divs = divisors_up_to_units(factor(cd));
    std::set<std::pair<std::string, std::string>> tried;
    for (const auto& b : den_divs) {
      const Scalar bq = to_gaussian_rational(b);
      for (const auto& a0 : num_divs) {
        for (int u = 0; u < 4 && rest.degree() > 0; ++u) {
          const Scalar lambda = to_gaussian_rational(a0 * gi_unit(u)) / bq;
          if (!tried.emplace(lambda.re().get_str(), lambda.im().get_str()).second) continue;
          if (!rest(lambda).is_zero()) continue;
          const std::size_t m = detail::strip_root(rest, lambda);
          out.found.emplace_back(lambda, m);
          total += m;
        }
        if (rest.degree() <= 0) break;
      }
      if (rest.degree() <= 0) break;
    }
  }
  std::sort(out.found.begin(), out.found.end(),
            [](const auto& x, const auto& y) { return canonical_less(x.first, y.first); });
  out.fully_split = total == degree;
  return out;
}

inline SpectrumReport gaussian_rational_spectrum(const Matrix& a) {
  require_square(a, "gaussian_rational_spectrum");
  if (a.rows() == 0) return {{}, true};
  return polynomial_roots(char_poly(a));
}

/// True iff char_poly(a) = x^n.
inline bool is_nilpotent(const Matrix& a) {
  require_square(a, "is_nilpotent");
  return char_poly(a).low_order() == a.rows();
}

/// rank(a^n) for n x n `a`, which equals rank(a^m) for every m >= n:
/// a^n vanishes exactly on the generalised 0-eigenspace, whose dimension
/// is the multiplicity of 0 in char_poly(a).
inline std::size_t stable_power_rank(const Matrix& a) {
  require_square(a, "stable_power_rank");
  return a.rows() - char_poly(a).low_order();
}

}  // namespace acfam
