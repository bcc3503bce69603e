#include <gtest/gtest.h>

#include <random>

#include "acfam/constructions.hpp"
#include "acfam/errors.hpp"
#include "acfam/family.hpp"
#include "acfam/family_io.hpp"
#include "oracles.hpp"

using acfam::Matrix;
using acfam::MatrixFamily;
using acfam::Scalar;

namespace {

// Independent pairwise check through the triple-loop product.
bool oracle_anticommuting(const MatrixFamily& fam) {
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t j = 0; j < fam.size(); ++j) {
      if (i == j) continue;
      if (!(oracle::naive_mul(fam[i], fam[j]) + oracle::naive_mul(fam[j], fam[i])).is_zero()) return false;
    }
  return true;
}

Matrix random_invertible(std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    Matrix v = oracle::random_integer_matrix(n, n, 2, rng);
    if (oracle::naive_rank(v) == n) return v;
  }
}

std::vector<MatrixFamily> generated_families() {
  std::vector<MatrixFamily> out;
  for (std::size_t q = 0; q <= 3; ++q) out.push_back(acfam::clifford_family(q));
  for (std::size_t n = 3; n <= 8; ++n) out.push_back(acfam::corner_family(n));
  out.push_back(acfam::padded_clifford(3, 1));
  out.push_back(acfam::padded_clifford(5, 0));
  out.push_back(acfam::direct_sum_families(acfam::corner_family(3), acfam::clifford_family(1)));
  return out;
}

}  // namespace

TEST(Anticommute, CliffordQ2Holds) {
  const auto rep = acfam::check_anticommuting(acfam::clifford_family(2));
  EXPECT_TRUE(rep.holds);
  EXPECT_TRUE(rep.violations.empty());
}

TEST(Anticommute, IdentitiesViolate) {
  const MatrixFamily fam(3, {Matrix::identity(3), Matrix::identity(3)});
  const auto rep = acfam::check_anticommuting(fam);
  EXPECT_FALSE(rep.holds);
  ASSERT_EQ(rep.violations.size(), 1U);
  EXPECT_EQ(rep.violations[0].i, 0U);
  EXPECT_EQ(rep.violations[0].j, 1U);
  EXPECT_EQ(rep.violations[0].residual, scale(2, Matrix::identity(3)));
}

TEST(Anticommute, CornerSixHasNineMembers) {
  const auto fam = acfam::corner_family(6);
  EXPECT_EQ(fam.size(), 9U);
  EXPECT_TRUE(acfam::is_anticommuting(fam));
  EXPECT_TRUE(oracle_anticommuting(fam));
}

TEST(Anticommute, ViolationsSortedAndNonzero) {
  MatrixFamily fam(2, {Matrix{{1, 0}, {0, 2}}, Matrix{{0, 1}, {1, 0}}, Matrix::identity(2), Matrix{{0, 1}, {-1, 0}}});
  const auto rep = acfam::check_anticommuting(fam);
  EXPECT_FALSE(rep.holds);
  for (std::size_t t = 0; t < rep.violations.size(); ++t) {
    EXPECT_FALSE(rep.violations[t].residual.is_zero());
    EXPECT_LT(rep.violations[t].i, rep.violations[t].j);
    if (t > 0) {
      const auto& a = rep.violations[t - 1];
      const auto& b = rep.violations[t];
      EXPECT_TRUE(a.i < b.i || (a.i == b.i && a.j < b.j));
    }
  }
}

TEST(Anticommute, EmptyAndSingletonAreVacuous) {
  EXPECT_TRUE(acfam::is_anticommuting(MatrixFamily(4, {})));
  EXPECT_TRUE(acfam::is_anticommuting(MatrixFamily(2, {Matrix::identity(2)})));
}

TEST(Anticommute, InvariantUnderConjugation) {
  std::mt19937_64 rng(41);
  std::vector<MatrixFamily> fams = generated_families();
  fams.push_back(MatrixFamily(2, {Matrix{{1, 1}, {0, 1}}, Matrix{{0, 1}, {1, 0}}}));
  for (const auto& fam : fams) {
    if (fam.n() > 6) continue;
    const auto conj = acfam::conjugate_family(fam, random_invertible(fam.n(), rng));
    EXPECT_EQ(acfam::is_anticommuting(conj), acfam::is_anticommuting(fam));
  }
}

TEST(Anticommute, ShapeChecked) { EXPECT_THROW(MatrixFamily(2, {Matrix::identity(3)}), acfam::ShapeError); }

TEST(NonzeroSquares, Examples) {
  for (bool b : acfam::check_nonzero_squares(acfam::corner_family(5))) EXPECT_TRUE(b);
  EXPECT_EQ(acfam::check_nonzero_squares(MatrixFamily(2, {Matrix{{0, 1}, {0, 0}}})), std::vector<bool>{false});
  for (bool b : acfam::check_nonzero_squares(acfam::clifford_family(2))) EXPECT_TRUE(b);
}

TEST(RankStats, CliffordQ3) {
  const auto st = acfam::rank_stats(acfam::clifford_family(3));
  EXPECT_EQ(st.sq_sum, 56U);
  EXPECT_EQ(st.nth_sum, 56U);
  EXPECT_EQ(st.conjecture_ratio, 7);
  EXPECT_EQ(st.reference_threshold, "7.000000");
}

TEST(RankStats, CornerSix) {
  const auto st = acfam::rank_stats(acfam::corner_family(6));
  EXPECT_EQ(st.nth_sum, 6U);
  EXPECT_EQ(st.sq_sum, 6U + 8U);
  EXPECT_EQ(st.conjecture_ratio, mpq_class(7, 3));
}

TEST(RankStats, EmptyFamily) {
  const auto st = acfam::rank_stats(MatrixFamily(3, {}));
  EXPECT_EQ(st.sq_sum, 0U);
  EXPECT_EQ(st.nth_sum, 0U);
  EXPECT_EQ(st.conjecture_ratio, 0);
}

TEST(RankStats, PowerRankChainIsMonotone) {
  for (const auto& fam : generated_families()) {
    const auto st = acfam::rank_stats(fam);
    for (std::size_t i = 0; i < fam.size(); ++i) {
      EXPECT_LE(st.per_member_nth_rank[i], st.per_member_sq_rank[i]);
      EXPECT_LE(st.per_member_sq_rank[i], st.per_member_rank[i]);
      Matrix p = fam[i];
      std::size_t prev = acfam::rank(p);
      for (std::size_t m = 2; m <= fam.n() + 1; ++m) {
        p = mat_mul(p, fam[i]);
        const std::size_t r = acfam::rank(p);
        EXPECT_LE(r, prev);
        prev = r;
      }
      EXPECT_EQ(prev, st.per_member_nth_rank[i]);
    }
  }
}

TEST(Independence, Examples) {
  EXPECT_TRUE(acfam::members_linearly_independent(acfam::clifford_family(2)));
  const Matrix a{{1, 2}, {3, 4}};
  EXPECT_FALSE(acfam::members_linearly_independent(MatrixFamily(2, {a, scale(2, a)})));
  EXPECT_TRUE(acfam::members_linearly_independent(acfam::corner_family(5)));
}

TEST(Independence, AnticommutingWithNonzeroSquaresImpliesIndependent) {
  for (const auto& fam : generated_families())
    if (acfam::all_squares_nonzero(fam)) {
      EXPECT_TRUE(acfam::members_linearly_independent(fam)) << fam.label();
    }
}

TEST(Invertible, LogBoundOnInvertibleFamilies) {
  for (const auto& fam : generated_families()) {
    if (!acfam::all_invertible(fam)) continue;
    // k <= 2 log2 n + 1  <=>  2^(k-1) <= n^2
    EXPECT_LE(mpz_class(1) << static_cast<mp_bitcnt_t>(fam.size() - 1),
              mpz_class(static_cast<unsigned long>(fam.n() * fam.n())));
  }
}

TEST(FamilyIo, RoundTripIsByteIdentical) {
  std::vector<MatrixFamily> fams = generated_families();
  fams.push_back(MatrixFamily(2, {}, "empty"));
  const Scalar i = acfam::GaussianRational::imaginary_unit();
  fams.push_back(MatrixFamily(2, {Matrix{{i, Scalar(1, 2)}, {-i, Scalar(mpq_class(-3, 7), mpq_class(1))}}}, "gaussian \"q\""));
  for (const auto& fam : fams) {
    const std::string text = acfam::serialize_family(fam);
    const MatrixFamily back = acfam::parse_family(text);
    EXPECT_EQ(back, fam);
    EXPECT_EQ(back.label(), fam.label());
    EXPECT_EQ(acfam::serialize_family(back), text);
  }
}

TEST(FamilyIo, ExactLayout) {
  const std::string expected =
      "{\n"
      "  \"format\": \"acfam-v1\",\n"
      "  \"n\": 2,\n"
      "  \"label\": \"clifford q=1\",\n"
      "  \"matrices\": [\n"
      "    [[\"1\",\"0\"],[\"0\",\"-1\"]],\n"
      "    [[\"0\",\"1\"],[\"-1\",\"0\"]],\n"
      "    [[\"0\",\"1\"],[\"1\",\"0\"]]\n"
      "  ]\n"
      "}\n";
  EXPECT_EQ(acfam::serialize_family(acfam::clifford_family(1)), expected);
  EXPECT_EQ(acfam::serialize_family(MatrixFamily(1, {}, "")),
            "{\n  \"format\": \"acfam-v1\",\n  \"n\": 1,\n  \"label\": \"\",\n  \"matrices\": []\n}\n");
}

TEST(FamilyIo, LenientInputIsNormalised) {
  const std::string text =
      R"({"matrices": [[["2/4", "-i"], ["0", "2+i"]]], "n": 2, "format": "acfam-v1", "label": "x"})";
  const MatrixFamily fam = acfam::parse_family(text);
  EXPECT_EQ(fam[0](0, 0), Scalar(1, 2));
  EXPECT_NE(acfam::serialize_family(fam).find(R"([["1/2","-1i"],["0","2+1i"]])"), std::string::npos);
}

TEST(FamilyIo, MalformedInputsRejected) {
  for (const char* bad : {
           "not json",
           R"({"format": "acfam-v2", "n": 1, "matrices": []})",
           R"({"format": "acfam-v1", "matrices": []})",
           R"({"format": "acfam-v1", "n": -1, "matrices": []})",
           R"({"format": "acfam-v1", "n": 1})",
           R"({"format": "acfam-v1", "n": 2, "matrices": [[["1","0"]]]})",
           R"({"format": "acfam-v1", "n": 1, "matrices": [[["x"]]]})",
           R"({"format": "acfam-v1", "n": 1, "matrices": [[[1]]]})",
           R"({"format": "acfam-v1", "n": 1, "label": 3, "matrices": []})",
           R"([1, 2])",
       })
    EXPECT_THROW(acfam::parse_family(bad), acfam::ParseError) << bad;
}
