#pragma once

#include <gmpxx.h>

#include <optional>
#include <utility>
#include <vector>

#include "acfam/scalar.hpp"

namespace acfam {

/// Element of Z[i]. Used internally where integer arithmetic avoids the
/// gcd normalisation that every rational operation pays for.
struct GaussianInteger {
  mpz_class re{0};
  mpz_class im{0};

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  mpz_class norm() const { return re * re + im * im; }
  GaussianInteger conj() const { return {re, -im}; }
  bool is_unit() const { return norm() == 1; }

  friend GaussianInteger operator*(const GaussianInteger& a, const GaussianInteger& b) {
    if (sgn(a.im) == 0 && sgn(b.im) == 0) return {a.re * b.re, 0};
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianInteger operator-(const GaussianInteger& a, const GaussianInteger& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianInteger operator+(const GaussianInteger& a, const GaussianInteger& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend bool operator==(const GaussianInteger& a, const GaussianInteger& b) {
    return a.re == b.re && a.im == b.im;
  }
};

inline GaussianInteger gi_unit(int k) {
  switch (k & 3) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

/// Returns a / b when b divides a exactly in Z[i].
inline std::optional<GaussianInteger> gi_exact_div(const GaussianInteger& a, const GaussianInteger& b) {
  mpz_class n = b.norm();
  GaussianInteger p = a * b.conj();
  if (!mpz_divisible_p(p.re.get_mpz_t(), n.get_mpz_t()) || !mpz_divisible_p(p.im.get_mpz_t(), n.get_mpz_t()))
    return std::nullopt;
  GaussianInteger q;
  mpz_divexact(q.re.get_mpz_t(), p.re.get_mpz_t(), n.get_mpz_t());
  mpz_divexact(q.im.get_mpz_t(), p.im.get_mpz_t(), n.get_mpz_t());
  return q;
}

namespace detail {
// round(p / n) for n > 0
inline mpz_class round_div(const mpz_class& p, const mpz_class& n) {
  mpz_class twice = 2 * p + n;
  mpz_class d = 2 * n;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), d.get_mpz_t());
  return q;
}
}  // namespace detail

inline GaussianInteger gi_gcd(GaussianInteger a, GaussianInteger b) {
  while (!b.is_zero()) {
    mpz_class nb = b.norm();
    GaussianInteger p = a * b.conj();
    GaussianInteger q{detail::round_div(p.re, nb), detail::round_div(p.im, nb)};
    GaussianInteger r = a - q * b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Multiplies a Gaussian rational by an integer known to clear its denominators.
inline GaussianInteger to_gaussian_integer(const GaussianRational& z, const mpz_class& scale) {
  GaussianInteger out;
  if (sgn(z.re()) != 0) {
    mpz_class t = scale * z.re().get_num();
    mpz_divexact(out.re.get_mpz_t(), t.get_mpz_t(), z.re().get_den_mpz_t());
  }
  if (sgn(z.im()) != 0) {
    mpz_class t = scale * z.im().get_num();
    mpz_divexact(out.im.get_mpz_t(), t.get_mpz_t(), z.im().get_den_mpz_t());
  }
  return out;
}

inline GaussianRational to_gaussian_rational(const GaussianInteger& z) {
  return {mpq_class(z.re), mpq_class(z.im)};
}

namespace detail {

// sqrt(-1) mod p for a prime p = 1 (mod 4).
inline mpz_class sqrt_minus_one(const mpz_class& p) {
  mpz_class e = (p - 1) / 4;
  for (unsigned long g = 2;; ++g) {
    mpz_class x;
    mpz_class base(g);
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    mpz_class sq = (x * x) % p;
    if (sq == p - 1) return x;
  }
}

// Gaussian primes above the rational prime p (one or two, up to associates).
inline std::vector<GaussianInteger> primes_above(const mpz_class& p) {
  if (p == 2) return {{1, 1}};
  if (p % 4 == 3) return {{p, 0}};
  mpz_class x = sqrt_minus_one(p);
  GaussianInteger pi = gi_gcd({p, 0}, {x, 1});
  return {pi, pi.conj()};
}

}  // namespace detail

/// Factorisation of a nonzero Gaussian integer into Gaussian primes with
/// exponents (up to a unit). `complete` is false when the norm had a
/// composite cofactor that trial division could not split.
struct GaussianFactorization {
  std::vector<std::pair<GaussianInteger, unsigned>> primes;
  bool complete = true;
};

inline GaussianFactorization factor(const GaussianInteger& z, unsigned long trial_limit = 1UL << 20) {
  GaussianFactorization out;
  mpz_class n = z.norm();
  std::vector<mpz_class> rational_primes;
  for (unsigned long d = 2; d <= trial_limit; d += (d == 2 ? 1 : 2)) {
    mpz_class dd(d);
    if (dd * dd > n) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      rational_primes.push_back(dd);
      while (mpz_divisible_ui_p(n.get_mpz_t(), d)) n /= d;
    }
  }
  if (n > 1) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
      rational_primes.push_back(n);
    } else {
      out.complete = false;
    }
  }
  GaussianInteger rest = z;
  for (const auto& p : rational_primes) {
    for (const auto& pi : detail::primes_above(p)) {
      unsigned e = 0;
      while (auto q = gi_exact_div(rest, pi)) {
        rest = *q;
        ++e;
      }
      if (e > 0) out.primes.emplace_back(pi, e);
    }
  }
  return out;
}

/// All divisors of z up to units (one representative per associate class).
inline std::vector<GaussianInteger> divisors_up_to_units(const GaussianFactorization& f) {
  std::vector<GaussianInteger> divs{{1, 0}};
  for (const auto& [pi, e] : f.primes) {
    const std::size_t base = divs.size();
    GaussianInteger power{1, 0};
    for (unsigned t = 1; t <= e; ++t) {
      power = power * pi;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * power);
    }
  }
  return divs;
}

}  // namespace acfam
