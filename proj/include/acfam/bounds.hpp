#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "acfam/constructions.hpp"
#include "acfam/family.hpp"

namespace acfam {

/// 2 * v2(n) + 1: the maximal number of anticommuting invertible n x n
/// matrices when n = m * 2^q with m odd.
inline std::size_t invertible_bound(std::size_t n) {
  if (n == 0) throw PreconditionError("invertible_bound: n must be positive");
  return 2 * static_cast<std::size_t>(std::countr_zero(n)) + 1;
}

/// Exact test of a <= 2 log2(n) + b, i.e. 2^(a-b) <= n^2.
inline bool within_two_log2_plus(long a, long b, std::size_t n) {
  if (a - b <= 0) return true;
  mpz_class lhs;
  mpz_ui_pow_ui(lhs.get_mpz_t(), 2, static_cast<unsigned long>(a - b));
  mpz_class nn(static_cast<unsigned long>(n));
  return lhs <= nn * nn;
}

/// Exact test of sum <= (2 log2(n) + 1) * n, i.e. 2^(sum-n) <= n^(2n).
inline bool nth_power_bound_holds(std::size_t sum, std::size_t n) {
  if (sum <= n) return true;
  mpz_class lhs, rhs;
  mpz_ui_pow_ui(lhs.get_mpz_t(), 2, sum - n);
  mpz_ui_pow_ui(rhs.get_mpz_t(), n, 2 * n);
  return lhs <= rhs;
}

/// Evidence for k <= 2n: M_ij = u e_i e_j v^t with every u e_i^2 v^t != 0.
/// Anticommutation makes M + M^t diagonal with nonzero diagonal, so
/// rank(M) >= k/2, while M = L R through C^n gives rank(M) <= n.
struct WitnessCertificate {
  Matrix u;  // 1 x n
  Matrix v;  // 1 x n
  Matrix m;  // k x k
  std::size_t rank_m = 0;
  bool diag_nonzero = false;
  std::size_t attempts = 0;
  std::size_t box = 0;  // entries of u, v drawn from [-box, box]
};

namespace detail {

// Uniform-ish integer in [-b, b] from a 64-bit draw; fixed mapping so the
// stream is reproducible across standard libraries.
inline long draw(std::mt19937_64& rng, std::uint64_t b) {
  return static_cast<long>(rng() % (2 * b + 1)) - static_cast<long>(b);
}

inline bool symmetric_part_is_nonzero_diagonal(const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Scalar s = m(i, j) + m(j, i);
      if ((i == j) == s.is_zero()) return false;
    }
  return true;
}

}  // namespace detail

inline constexpr std::size_t kWitnessRounds = 24;
inline constexpr std::uint64_t kWitnessInitialBox = 8;

/// Samples integer u, v from a box that starts at [-8, 8] and doubles every
/// round until u e_i^2 v^t != 0 for all members, then builds M.
inline WitnessCertificate witness_certificate(const MatrixFamily& fam, std::uint64_t seed) {
  if (!is_anticommuting(fam)) throw PreconditionError("witness_certificate: family is not anticommuting");
  const std::vector<Matrix> sq = squares(fam);
  for (std::size_t i = 0; i < sq.size(); ++i)
    if (sq[i].is_zero()) throw PreconditionError("witness_certificate: e_" + std::to_string(i) + "^2 = 0");
  const std::size_t n = fam.n();
  const std::size_t k = fam.size();
  std::mt19937_64 rng(seed);
  std::uint64_t box = kWitnessInitialBox;
  for (std::size_t attempt = 1; attempt <= kWitnessRounds; ++attempt, box *= 2) {
    Matrix u(1, n), v(1, n);
    for (std::size_t j = 0; j < n; ++j) u(0, j) = detail::draw(rng, box);
    for (std::size_t j = 0; j < n; ++j) v(0, j) = detail::draw(rng, box);
    const Matrix vt = transpose(v);
    Matrix left(k, n), right(n, k);
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) {
      const Matrix ue = mat_mul(u, fam[i]);
      const Matrix ev = mat_mul(fam[i], vt);
      ok = !mat_mul(ue, ev).is_zero();  // u e_i^2 v^t
      set_block(left, i, 0, ue);
      set_block(right, 0, i, ev);
    }
    if (!ok) continue;
    WitnessCertificate cert;
    cert.u = std::move(u);
    cert.v = std::move(v);
    cert.m = mat_mul(left, right);
    cert.rank_m = rank(cert.m);
    cert.diag_nonzero = detail::symmetric_part_is_nonzero_diagonal(cert.m);
    cert.attempts = attempt;
    cert.box = box;
    if (!cert.diag_nonzero || k > 2 * cert.rank_m || cert.rank_m > n)
      throw InternalError("witness_certificate: k <= 2 rank(M) <= 2n violated");
    return cert;
  }
  throw SamplingError("witness_certificate: retry budget exhausted");
}

struct ProductIndependence {
  bool independent = false;
  std::size_t product_count = 0;
  std::size_t rank = 0;
};

inline constexpr std::size_t kMaxProductMembers = 20;

/// Linear independence of e_A = e_{i1} ... e_{ir} (i1 < ... < ir) over all
/// subsets A with |A| <= p and |A| of the given parity, enumerated in
/// colexicographic order. Requires prod_{i in A} e_i^2 != 0 for every
/// |A| <= p; under that hypothesis a dependent result is a counterexample.
inline ProductIndependence products_independent(const MatrixFamily& fam, std::size_t p, bool odd) {
  const std::size_t k = fam.size();
  if (p > k) throw PreconditionError("products_independent: p exceeds family size");
  if (k > kMaxProductMembers) throw PreconditionError("products_independent: too many members to enumerate subsets");
  if (!is_anticommuting(fam)) throw PreconditionError("products_independent: family is not anticommuting");
  const std::size_t n = fam.n();
  const std::vector<Matrix> sq = squares(fam);
  std::vector<Matrix> products;
  const std::uint64_t limit = std::uint64_t{1} << k;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size > p) continue;
    Matrix sq_prod = Matrix::identity(n);
    Matrix e_a = Matrix::identity(n);
    for (std::size_t i = 0; i < k; ++i) {
      if (!((mask >> i) & 1U)) continue;
      sq_prod = mat_mul(sq_prod, sq[i]);
      e_a = mat_mul(e_a, fam[i]);
    }
    if (sq_prod.is_zero()) {
      std::string set = "{";
      for (std::size_t i = 0; i < k; ++i)
        if ((mask >> i) & 1U) set += (set.size() > 1 ? "," : "") + std::to_string(i);
      throw PreconditionError("products_independent: product of squares vanishes for A = " + set + "}");
    }
    if ((size % 2 == 1) == odd) products.push_back(std::move(e_a));
  }
  ProductIndependence out;
  out.product_count = products.size();
  out.rank = products.empty() ? 0 : rank(stack_flattened(products));
  out.independent = out.rank == out.product_count;
  return out;
}

struct BoundCondition {
  std::string name;
  bool applicable = false;
  bool holds = true;
  std::string detail;
};

struct HighRankReport {
  std::size_t min_sq_rank = 0;
  std::vector<BoundCondition> conditions;
  bool all_hold() const {
    for (const auto& c : conditions)
      if (c.applicable && !c.holds) return false;
    return true;
  }
};

/// With r = min rank(e_i^2): for each integer c with r > n(1 - 1/c) checks
/// k <= c n^(2/c) (as k^c <= c^c n^2); if r > n(1 - 1/(2(log2 n + 1)))
/// checks k <= 2 log2 n + 1. Conditions for c > k are implied by k <= c and
/// are not listed.
inline HighRankReport check_high_rank_bounds(const MatrixFamily& fam) {
  if (!is_anticommuting(fam)) throw PreconditionError("check_high_rank_bounds: family is not anticommuting");
  HighRankReport rep;
  const std::size_t k = fam.size();
  const std::size_t n = fam.n();
  if (k == 0) return rep;
  std::size_t r = n;
  for (const auto& s : squares(fam)) r = std::min(r, rank(s));
  rep.min_sq_rank = r;
  const std::size_t d = n - r;
  const mpz_class nn(static_cast<unsigned long>(n));
  for (std::size_t c = 1; c <= k; ++c) {
    BoundCondition cond;
    cond.name = "rank>n(1-1/" + std::to_string(c) + ")";
    cond.applicable = c * d < n;
    if (cond.applicable) {
      mpz_class lhs, cc;
      mpz_ui_pow_ui(lhs.get_mpz_t(), k, c);
      mpz_ui_pow_ui(cc.get_mpz_t(), c, c);
      cond.holds = lhs <= cc * nn * nn;
      cond.detail = "k=" + std::to_string(k) + " <= " + std::to_string(c) + "*n^(2/" + std::to_string(c) + ")";
    }
    rep.conditions.push_back(std::move(cond));
  }
  BoundCondition log_cond;
  log_cond.name = "rank>n(1-1/(2(log2 n+1)))";
  if (d == 0) {
    log_cond.applicable = true;
  } else if (n > 2 * d) {
    mpz_class lhs, rhs;
    mpz_ui_pow_ui(lhs.get_mpz_t(), n, 2 * d);
    mpz_ui_pow_ui(rhs.get_mpz_t(), 2, n - 2 * d);
    log_cond.applicable = lhs < rhs;
  }
  if (log_cond.applicable) {
    log_cond.holds = within_two_log2_plus(static_cast<long>(k), 1, n);
    log_cond.detail = "k=" + std::to_string(k) + " <= 2log2(" + std::to_string(n) + ")+1";
  }
  rep.conditions.push_back(std::move(log_cond));
  return rep;
}

struct NthPowerCheck {
  std::size_t nth_sum = 0;
  bool holds = true;
};

/// sum_i rank(e_i^n) <= (2 log2 n + 1) n, compared exactly.
inline NthPowerCheck nth_power_check(const MatrixFamily& fam) {
  if (!is_anticommuting(fam)) throw PreconditionError("check_nth_power_bound: family is not anticommuting");
  NthPowerCheck out;
  for (const auto& e : fam.members()) out.nth_sum += stable_power_rank(e);
  out.holds = fam.n() == 0 || nth_power_bound_holds(out.nth_sum, fam.n());
  return out;
}

inline bool check_nth_power_bound(const MatrixFamily& fam) { return nth_power_check(fam).holds; }

struct AlphaRow {
  std::size_t n;
  long alpha;
  char branch;        // 'a' = 2n-3, 'b' = alpha(r)+alpha(n-r), 'c' = 2+alpha(n/2); '-' for n = 1
  std::size_t split;  // the r of branch b, 0 otherwise
};

struct AlphaTable {
  std::vector<AlphaRow> rows;  // rows[n-1] describes n
  long at(std::size_t n) const { return rows.at(n - 1).alpha; }
};

/// Largest anticommuting family of n x n matrices with nonzero squares, in
/// closed form: 2n-1 for n <= 2, 2n-2 for n in {3, 4}, 2n-3 beyond.
inline long alpha_closed_form(std::size_t n) {
  if (n == 0) throw PreconditionError("alpha_closed_form: n must be positive");
  const long m = static_cast<long>(n);
  if (n <= 2) return 2 * m - 1;
  if (n <= 4) return 2 * m - 2;
  return 2 * m - 3;
}

/// alpha(1) = 1; alpha(n) = max(2n-3, max_{0<r<n} alpha(r)+alpha(n-r),
/// 2+alpha(n/2)) with alpha(n/2) := -1 for odd n. Ties report the first
/// attaining branch in the order a, b, c.
inline AlphaTable alpha(std::size_t n_max) {
  if (n_max < 1) throw PreconditionError("alpha: n_max must be at least 1");
  AlphaTable t;
  t.rows.reserve(n_max);
  std::vector<long> a(n_max + 1, 0);
  a[1] = 1;
  t.rows.push_back({1, 1, '-', 0});
  for (std::size_t n = 2; n <= n_max; ++n) {
    const long m = static_cast<long>(n);
    const long branch_a = 2 * m - 3;
    long branch_b = -1;
    std::size_t split = 0;
    for (std::size_t r = 1; r <= n / 2; ++r) {
      const long s = a[r] + a[n - r];
      if (s > branch_b) {
        branch_b = s;
        split = r;
      }
    }
    const long half = n % 2 == 0 ? a[n / 2] : -1;
    const long branch_c = 2 + half;
    AlphaRow row{n, branch_a, 'a', 0};
    if (branch_b > row.alpha) row = {n, branch_b, 'b', split};
    if (branch_c > row.alpha) row = {n, branch_c, 'c', 0};
    a[n] = row.alpha;
    t.rows.push_back(row);
  }
  return t;
}

/// corner_family(n) as a constructive witness that alpha(n) = 2n - 3 is
/// attained for n > 4.
inline MatrixFamily verify_alpha_lower_bound(std::size_t n) {
  if (n <= 4) throw std::out_of_range("verify_alpha_lower_bound: n must exceed 4");
  MatrixFamily fam = corner_family(n);
  if (static_cast<long>(fam.size()) != alpha_closed_form(n) || !is_anticommuting(fam) || !all_squares_nonzero(fam))
    throw InternalError("verify_alpha_lower_bound: corner family fails to attain alpha(n)");
  return fam;
}

}  // namespace acfam
