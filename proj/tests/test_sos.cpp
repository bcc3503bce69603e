#include <gtest/gtest.h>

#include <random>
#include <string>

#include "acfam/errors.hpp"
#include "acfam/family_io.hpp"
#include "acfam/sos.hpp"
#include "oracles.hpp"

using acfam::Matrix;
using acfam::Scalar;
using acfam::SosFormula;

namespace {

struct Coef {
  std::size_t i, j, l;
  long value;
};

SosFormula make(std::size_t k, std::size_t n, const std::vector<Coef>& coefs) {
  SosFormula f(k, n);
  for (const auto& c : coefs) f = f.with_coefficient(c.i, c.j, c.l, c.value);
  return f;
}

// f_1 = x1 y1 - x2 y2, f_2 = x1 y2 + x2 y1 (0-based indices below).
SosFormula gauss() { return make(2, 2, {{0, 0, 0, 1}, {1, 1, 0, -1}, {0, 1, 1, 1}, {1, 0, 1, 1}}); }

// Evaluates both sides of the identity at an integer point.
bool identity_holds_at(const SosFormula& f, const std::vector<long>& x, const std::vector<long>& y) {
  mpq_class lhs_x = 0, lhs_y = 0;
  for (long v : x) lhs_x += v * v;
  for (long v : y) lhs_y += v * v;
  Scalar rhs;
  for (std::size_t l = 0; l < f.n(); ++l) {
    Scalar fl;
    for (std::size_t i = 0; i < f.k(); ++i)
      for (std::size_t j = 0; j < f.k(); ++j) fl = fl + f.c(i, j, l) * Scalar(x[i] * y[j]);
    rhs = rhs + fl * fl;
  }
  return rhs == Scalar(mpq_class(lhs_x * lhs_y));
}

std::string fixture(const std::string& name) { return std::string(ACFAM_TEST_DATA) + "/" + name; }

}  // namespace

TEST(Sos, GaussIdentity) {
  const SosFormula g = gauss();
  EXPECT_TRUE(acfam::verify_by_expansion(g));
  EXPECT_TRUE(acfam::verify_hurwitz_equations(g));
  EXPECT_TRUE(identity_holds_at(g, {3, -2}, {5, 7}));
}

TEST(Sos, TrivialOneSquare) {
  const SosFormula f = make(1, 1, {{0, 0, 0, 1}});
  EXPECT_TRUE(acfam::verify_by_expansion(f));
  EXPECT_TRUE(acfam::verify_hurwitz_equations(f));
  EXPECT_EQ(f, acfam::builtin_formula(1));
}

TEST(Sos, SignFlipAndBadSecondForm) {
  // f_1 = x1 y1 + x2 y2, f_2 = x1 y2 - x2 y1
  const SosFormula flipped = gauss().with_coefficient(1, 1, 0, 1).with_coefficient(1, 0, 1, -1);
  EXPECT_TRUE(acfam::verify_by_expansion(flipped));
  EXPECT_TRUE(acfam::verify_hurwitz_equations(flipped));
  const SosFormula half_flipped = gauss().with_coefficient(1, 0, 1, -1);
  EXPECT_FALSE(acfam::verify_by_expansion(half_flipped));
  EXPECT_FALSE(acfam::verify_hurwitz_equations(half_flipped));
  const SosFormula bad = gauss().with_coefficient(1, 0, 1, 0).with_coefficient(0, 0, 1, 1);  // f_2 = x1 y2 + x1 y1
  EXPECT_FALSE(acfam::verify_by_expansion(bad));
  EXPECT_FALSE(acfam::verify_hurwitz_equations(bad));
  EXPECT_FALSE(identity_holds_at(bad, {1, 2}, {3, 1}));
}

TEST(Sos, ZeroFormulaInvalid) {
  const SosFormula z(3, 4);
  EXPECT_FALSE(acfam::verify_hurwitz_equations(z));
  EXPECT_FALSE(acfam::verify_by_expansion(z));
}

TEST(Sos, ViewsConsistent) {
  const SosFormula q = acfam::builtin_formula(4);
  EXPECT_TRUE(q.views_consistent());
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t l = 0; l < 4; ++l) EXPECT_EQ(q.hurwitz()[i](j, l), q.c(i, j, l));
  EXPECT_THROW(SosFormula(2, 2, std::vector<Scalar>(7)), acfam::ShapeError);
}

TEST(Sos, BuiltinsPassBothVerifiers) {
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<long> d(-9, 9);
  for (std::size_t k : {1, 2, 4, 8}) {
    const SosFormula f = acfam::builtin_formula(k);
    EXPECT_EQ(f.n(), k);
    EXPECT_TRUE(acfam::verify_by_expansion(f)) << k;
    EXPECT_TRUE(acfam::verify_hurwitz_equations(f)) << k;
    for (int t = 0; t < 5; ++t) {
      std::vector<long> x(k), y(k);
      for (auto& v : x) v = d(rng);
      for (auto& v : y) v = d(rng);
      EXPECT_TRUE(identity_holds_at(f, x, y));
    }
  }
  EXPECT_THROW(acfam::builtin_formula(3), acfam::PreconditionError);
  EXPECT_THROW(acfam::builtin_formula(16), acfam::PreconditionError);
}

TEST(Sos, QuaternionTableIsHamilton) {
  // e1 e2 = e3, e2 e3 = e1, e3 e1 = e2, e_i^2 = -1.
  const SosFormula q = acfam::builtin_formula(4);
  EXPECT_EQ(q.c(1, 2, 3), Scalar(1));
  EXPECT_EQ(q.c(2, 3, 1), Scalar(1));
  EXPECT_EQ(q.c(3, 1, 2), Scalar(1));
  for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(q.c(i, i, 0), Scalar(-1));
}

TEST(Sos, OctonionMatchesGoldenFile) {
  const std::string golden = acfam::io::read_file(fixture("octonion.sosf.json"));
  EXPECT_EQ(acfam::serialize_formula(acfam::builtin_formula(8)), golden);
  EXPECT_EQ(acfam::parse_formula(golden), acfam::builtin_formula(8));
}

TEST(Sos, VerifiersAgreeOnMutations) {
  std::mt19937_64 rng(72);
  std::uniform_int_distribution<long> d(-2, 2);
  std::size_t invalid = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t k = std::vector<std::size_t>{1, 2, 4, 8}[rng() % 4];
    SosFormula f = acfam::builtin_formula(k);
    const int changes = 1 + static_cast<int>(rng() % 3);
    for (int c = 0; c < changes; ++c)
      f = f.with_coefficient(rng() % k, rng() % k, rng() % k, Scalar(mpq_class(d(rng)), mpq_class(t % 4 == 0 ? d(rng) : 0)));
    const bool h = acfam::verify_hurwitz_equations(f);
    EXPECT_EQ(h, acfam::verify_by_expansion(f));
    invalid += h ? 0 : 1;
  }
  EXPECT_GT(invalid, 100U);
}

TEST(Sos, NonSquareFormulasAgreeToo) {
  // Gauss formula padded with a zero f_3: still a valid identity with n = 3.
  SosFormula f(2, 3);
  const SosFormula g = gauss();
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t l = 0; l < 2; ++l) f = f.with_coefficient(i, j, l, g.c(i, j, l));
  EXPECT_TRUE(acfam::verify_hurwitz_equations(f));
  EXPECT_TRUE(acfam::verify_by_expansion(f));
  EXPECT_THROW(acfam::formula_to_invertibles(f), acfam::PreconditionError);
  const auto fam = acfam::formula_to_family(f);
  EXPECT_EQ(fam.n(), 7U);
  EXPECT_TRUE(acfam::is_anticommuting(fam));
}

TEST(FormulaToFamily, Quaternion) {
  const auto fam = acfam::formula_to_family(acfam::builtin_formula(4));
  EXPECT_EQ(fam.n(), 12U);
  EXPECT_EQ(fam.size(), 4U);
  EXPECT_TRUE(acfam::is_anticommuting(fam));
  const Matrix sq0 = mat_mul(fam[0], fam[0]);
  std::size_t total = 0;
  for (const auto& e : fam.members()) {
    const Matrix sq = mat_mul(e, e);
    EXPECT_EQ(sq, sq0);
    EXPECT_EQ(acfam::rank(sq), 4U);
    EXPECT_TRUE(mat_mul(sq, e).is_zero());
    total += acfam::rank(sq);
  }
  EXPECT_EQ(total, 16U);
  EXPECT_EQ(acfam::rank_stats(fam).sq_sum, 16U);
}

TEST(FormulaToFamily, SmallCases) {
  const auto one = acfam::formula_to_family(acfam::builtin_formula(1));
  ASSERT_EQ(one.size(), 1U);
  EXPECT_EQ(one.n(), 3U);
  EXPECT_EQ(acfam::rank(mat_mul(one[0], one[0])), 1U);
  EXPECT_TRUE(mat_pow(one[0], 3).is_zero());
  const auto two = acfam::formula_to_family(gauss());
  EXPECT_EQ(two.n(), 6U);
  EXPECT_EQ(two.size(), 2U);
  for (const auto& e : two.members()) {
    EXPECT_FALSE(mat_pow(e, 2).is_zero());
    EXPECT_TRUE(mat_pow(e, 3).is_zero());
  }
  EXPECT_THROW(acfam::formula_to_family(SosFormula(2, 2)), acfam::PreconditionError);
}

TEST(FormulaToInvertibles, QuaternionAndOctonion) {
  const auto q = acfam::formula_to_invertibles(acfam::builtin_formula(4));
  EXPECT_EQ(q.size(), 3U);
  EXPECT_LE(q.size(), acfam::invertible_bound(4));
  const auto o = acfam::formula_to_invertibles(acfam::builtin_formula(8));
  EXPECT_EQ(o.size(), 7U);
  EXPECT_EQ(o.size(), acfam::invertible_bound(8));
  EXPECT_TRUE(acfam::is_anticommuting(o));
  for (const auto& e : o.members()) {
    const Scalar det = acfam::determinant(e);
    EXPECT_TRUE(det == Scalar(1) || det == Scalar(-1));
  }
  EXPECT_TRUE(acfam::formula_to_invertibles(acfam::builtin_formula(1)).empty());
}

TEST(SosIo, RoundTripAndLayout) {
  for (std::size_t k : {1, 2, 4, 8}) {
    const SosFormula f = acfam::builtin_formula(k);
    const std::string text = acfam::serialize_formula(f);
    EXPECT_EQ(acfam::serialize_formula(acfam::parse_formula(text)), text);
  }
  EXPECT_EQ(acfam::serialize_formula(acfam::builtin_formula(1)),
            "{\n  \"format\": \"sosf-v1\",\n  \"k\": 1,\n  \"n\": 1,\n  \"tensor\": [\n    [[\"1\"]]\n  ]\n}\n");
}

TEST(SosIo, MalformedRejected) {
  for (const char* bad : {
           R"({"format": "acfam-v1", "k": 1, "n": 1, "tensor": [[["1"]]]})",
           R"({"format": "sosf-v1", "k": 1, "tensor": [[["1"]]]})",
           R"({"format": "sosf-v1", "k": 2, "n": 1, "tensor": [[["1"]]]})",
           R"({"format": "sosf-v1", "k": 1, "n": 2, "tensor": [[["1"]]]})",
           R"({"format": "sosf-v1", "k": 1, "n": 1, "tensor": [[["1/0"]]]})",
       })
    EXPECT_THROW(acfam::parse_formula(bad), acfam::ParseError) << bad;
}
