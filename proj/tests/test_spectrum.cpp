#include <gtest/gtest.h>

#include <random>

#include "acfam/constructions.hpp"
#include "acfam/errors.hpp"
#include "acfam/spectrum.hpp"
#include "oracles.hpp"

using acfam::Matrix;
using acfam::Polynomial;
using acfam::Scalar;

namespace {

const Scalar kI = acfam::GaussianRational::imaginary_unit();

Matrix random_strictly_upper(std::size_t n, std::mt19937_64& rng) {
  Matrix a = oracle::random_integer_matrix(n, n, 4, rng);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) a(i, j) = 0;
  return a;
}

Matrix random_unimodular(std::size_t n, std::mt19937_64& rng) {
  // Product of a unit lower and a unit upper triangular integer matrix.
  Matrix l = Matrix::identity(n), u = Matrix::identity(n);
  std::uniform_int_distribution<long> d(-2, 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      l(i, j) = d(rng);
      u(j, i) = d(rng);
    }
  return oracle::naive_mul(l, u);
}

}  // namespace

TEST(Polynomial, ArithmeticAndDivision) {
  const Polynomial p{-1, 0, 1};  // x^2 - 1
  const Polynomial a = Polynomial::linear(1), b = Polynomial::linear(-1);
  EXPECT_EQ(a * b, p);
  auto [q, r] = divmod(p, a);
  EXPECT_EQ(q, b);
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(acfam::gcd(p, Polynomial{1, 2, 1}), b);  // x + 1
  EXPECT_EQ(acfam::pow(a, 3), (Polynomial{-1, 3, -3, 1}));
  EXPECT_EQ(p(Scalar(3)), Scalar(8));
  EXPECT_EQ(Polynomial{}.degree(), -1);
  EXPECT_THROW(divmod(p, Polynomial{}), acfam::DomainError);
}

TEST(CharPoly, Examples) {
  EXPECT_EQ(acfam::char_poly(Matrix::diagonal({1, -1})), (Polynomial{-1, 0, 1}));
  EXPECT_EQ(acfam::char_poly(Matrix{{0, 1}, {-1, 0}}), (Polynomial{1, 0, 1}));
  std::mt19937_64 rng(31);
  for (std::size_t n = 1; n <= 6; ++n)
    EXPECT_EQ(acfam::char_poly(random_strictly_upper(n, rng)), Polynomial::monomial(n));
  EXPECT_THROW(acfam::char_poly(Matrix(2, 3)), acfam::ShapeError);
}

TEST(CharPoly, MatchesFaddeevLeVerrier) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 1 + rng() % 8;
    Matrix a = t % 2 ? oracle::random_gaussian_matrix(n, n, 5, rng) : oracle::random_low_rank(n, n, 1 + rng() % n, 3, rng);
    if (t % 5 == 0) a(0, 0) = a(0, 0) / Scalar(7);
    const Polynomial p = acfam::char_poly(a);
    EXPECT_TRUE(p.is_monic());
    EXPECT_EQ(p.degree(), static_cast<long>(n));
    EXPECT_EQ(p, oracle::faddeev_leverrier(a));
  }
}

TEST(CharPoly, DeterminantOfTwoByTwo) {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 30; ++t) {
    const Matrix a = oracle::random_gaussian_matrix(2, 2, 9, rng);
    const Scalar tr = a(0, 0) + a(1, 1);
    const Scalar det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    EXPECT_EQ(acfam::char_poly(a), (Polynomial{det, -tr, 1}));
  }
}

TEST(CharPoly, MultipliesOverDirectSums) {
  std::mt19937_64 rng(34);
  for (int t = 0; t < 20; ++t) {
    const Matrix a = oracle::random_gaussian_matrix(2, 2, 5, rng);
    const Matrix b = oracle::random_gaussian_matrix(2, 2, 5, rng);
    EXPECT_EQ(acfam::char_poly(direct_sum(a, b)), acfam::char_poly(a) * acfam::char_poly(b));
  }
}

TEST(CharPoly, InvariantUnderConjugation) {
  std::mt19937_64 rng(35);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + rng() % 5;
    const Matrix a = oracle::random_gaussian_matrix(n, n, 3, rng);
    const Matrix v = random_unimodular(n, rng);
    EXPECT_EQ(acfam::char_poly(acfam::conjugate(a, v)), acfam::char_poly(a));
  }
}

TEST(CharPoly, CayleyHamiltonOnGeneratedMatricesUpTo16) {
  std::vector<Matrix> ms;
  for (std::size_t q = 0; q <= 4; ++q)
    for (const auto& e : acfam::clifford_family(q).members()) ms.push_back(e);
  for (std::size_t n : {3, 5, 8, 16})
    for (const auto& e : acfam::corner_family(n).members()) ms.push_back(e);
  for (const auto& e : acfam::padded_clifford(3, 2).members()) ms.push_back(e);
  std::mt19937_64 rng(36);
  for (std::size_t n = 1; n <= 16; n += 3) {
    ms.push_back(oracle::random_integer_matrix(n, n, 3, rng));
    if (n >= 3) ms.push_back(acfam::conjugate(acfam::corner_family(n)[1], random_unimodular(n, rng)));
  }
  for (const auto& a : ms) EXPECT_TRUE(evaluate(acfam::char_poly(a), a).is_zero());
}

TEST(Spectrum, Examples) {
  const auto s = acfam::gaussian_rational_spectrum(Matrix::diagonal({2, -2, 0}));
  EXPECT_TRUE(s.fully_split);
  ASSERT_EQ(s.found.size(), 3U);
  EXPECT_EQ(s.multiplicity(2), 1U);
  EXPECT_EQ(s.multiplicity(-2), 1U);
  EXPECT_EQ(s.multiplicity(0), 1U);

  const auto r = acfam::gaussian_rational_spectrum(Matrix{{0, 1}, {-1, 0}});
  EXPECT_TRUE(r.fully_split);
  EXPECT_EQ(r.multiplicity(kI), 1U);
  EXPECT_EQ(r.multiplicity(-kI), 1U);

  const auto c = acfam::gaussian_rational_spectrum(Matrix{{0, 2}, {1, 0}});  // companion of x^2 - 2
  EXPECT_FALSE(c.fully_split);
  EXPECT_TRUE(c.found.empty());
}

TEST(Spectrum, GaussianAndFractionalRoots) {
  // (x - (1+2i))^2 (x - 3/2) (x + 2/3 i)
  const Scalar z1(mpq_class(1), mpq_class(2)), z2(mpq_class(3, 2)), z3(mpq_class(0), mpq_class(-2, 3));
  const Polynomial p = acfam::pow(Polynomial::linear(z1), 2) * Polynomial::linear(z2) * Polynomial::linear(z3);
  const auto s = acfam::polynomial_roots(p);
  EXPECT_TRUE(s.fully_split);
  EXPECT_EQ(s.multiplicity(z1), 2U);
  EXPECT_EQ(s.multiplicity(z2), 1U);
  EXPECT_EQ(s.multiplicity(z3), 1U);
  // Irreducible quadratic factor x^2 + x + 1 leaves only the rational root.
  const auto t = acfam::polynomial_roots(Polynomial{1, 1, 1} * Polynomial::linear(5));
  EXPECT_FALSE(t.fully_split);
  ASSERT_EQ(t.found.size(), 1U);
  EXPECT_EQ(t.found[0].first, Scalar(5));
}

TEST(Spectrum, ReportedValuesAreExactRoots) {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + rng() % 6;
    // Triangular with random Gaussian diagonal, then conjugated: known spectrum.
    Matrix a = random_strictly_upper(n, rng);
    std::uniform_int_distribution<long> d(-6, 6);
    for (std::size_t i = 0; i < n; ++i) a(i, i) = Scalar(mpq_class(d(rng)), mpq_class(d(rng)));
    const Matrix c = acfam::conjugate(a, random_unimodular(n, rng));
    const Polynomial p = acfam::char_poly(c);
    const auto s = acfam::gaussian_rational_spectrum(c);
    EXPECT_TRUE(s.fully_split);
    std::size_t total = 0;
    for (const auto& [lambda, m] : s.found) {
      EXPECT_TRUE(p(lambda).is_zero());
      total += m;
    }
    EXPECT_EQ(total, n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_GE(s.multiplicity(a(i, i)), 1U);
  }
}

TEST(Spectrum, EmptyMatrixIsSplit) { EXPECT_TRUE(acfam::gaussian_rational_spectrum(Matrix(0, 0)).fully_split); }

TEST(Nilpotent, Examples) {
  EXPECT_TRUE(acfam::is_nilpotent(Matrix::zero(3, 3)));
  EXPECT_FALSE(acfam::is_nilpotent(Matrix::identity(3)));
  EXPECT_TRUE(acfam::is_nilpotent(acfam::corner_family(5)[1]));
  EXPECT_THROW(acfam::is_nilpotent(Matrix(1, 2)), acfam::ShapeError);
}

TEST(Nilpotent, MatchesPowerDefinition) {
  std::mt19937_64 rng(38);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + rng() % 6;
    Matrix a = t % 2 ? random_strictly_upper(n, rng) : oracle::random_low_rank(n, n, 1 + rng() % n, 2, rng);
    a = acfam::conjugate(a, random_unimodular(n, rng));
    EXPECT_EQ(acfam::is_nilpotent(a), mat_pow(a, n).is_zero());
  }
}

TEST(StablePowerRank, EqualsRankOfNthPower) {
  std::mt19937_64 rng(39);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + rng() % 6;
    Matrix a = random_strictly_upper(n, rng);
    if (n > 1) a(0, 0) = 1 + static_cast<long>(rng() % 3);
    if (t % 2) a = direct_sum(a, oracle::random_integer_matrix(2, 2, 3, rng));
    a = acfam::conjugate(a, random_unimodular(a.rows(), rng));
    const std::size_t m = a.rows();
    EXPECT_EQ(acfam::stable_power_rank(a), acfam::rank(mat_pow(a, m)));
    EXPECT_EQ(acfam::stable_power_rank(a), acfam::rank(mat_pow(a, m + 3)));
  }
}
