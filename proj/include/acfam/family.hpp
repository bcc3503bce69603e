#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "acfam/elimination.hpp"
#include "acfam/matrix.hpp"
#include "acfam/spectrum.hpp"

namespace acfam {

/// An ordered list e_1..e_k of n x n matrices plus a provenance label.
class MatrixFamily {
 public:
  MatrixFamily() = default;
  MatrixFamily(std::size_t n, std::vector<Matrix> members, std::string label = {})
      : n_(n), members_(std::move(members)), label_(std::move(label)) {
    for (const auto& m : members_)
      if (m.rows() != n_ || m.cols() != n_) throw ShapeError("family member is not " + std::to_string(n_) + "x" + std::to_string(n_));
  }

  std::size_t n() const { return n_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<Matrix>& members() const& { return members_; }
  std::vector<Matrix> members() && { return std::move(members_); }
  const Matrix& operator[](std::size_t i) const { return members_[i]; }
  const std::string& label() const { return label_; }

  MatrixFamily with_label(std::string label) const { return {n_, members_, std::move(label)}; }

  friend bool operator==(const MatrixFamily& a, const MatrixFamily& b) {
    return a.n_ == b.n_ && a.members_ == b.members_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Matrix> members_;
  std::string label_;
};

struct AnticommuteViolation {
  std::size_t i;  // 0-based, i < j
  std::size_t j;
  Matrix residual;  // e_i e_j + e_j e_i, never zero
};

struct AnticommuteReport {
  bool holds = true;
  std::vector<AnticommuteViolation> violations;  // sorted by (i, j)
};

namespace detail {

// Nonzero entries of each row as (column, entry) pairs.
using SparseRows = std::vector<std::vector<std::pair<std::size_t, const Scalar*>>>;

inline SparseRows sparse_rows(const Matrix& m) {
  SparseRows rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero()) rows[r].emplace_back(c, &m(r, c));
  return rows;
}

// Dense n x n scratch that remembers which entries were written, so a
// sequence of sparse products reuses one allocation.
class Accumulator {
 public:
  explicit Accumulator(std::size_t n) : n_(n), acc_(n, n), seen_(n * n, 0) {}

  void add_product(const SparseRows& a, const SparseRows& b) {
    for (std::size_t r = 0; r < n_; ++r)
      for (const auto& [t, x] : a[r])
        for (const auto& [c, y] : b[t]) {
          const std::size_t idx = r * n_ + c;
          if (!seen_[idx]) {
            seen_[idx] = 1;
            touched_.push_back(idx);
          }
          acc_(r, c) += *x * *y;
        }
  }
  bool is_zero() const {
    for (std::size_t idx : touched_)
      if (!acc_(idx / n_, idx % n_).is_zero()) return false;
    return true;
  }
  Matrix value() const {
    Matrix out(n_, n_);
    for (std::size_t idx : touched_) out(idx / n_, idx % n_) = acc_(idx / n_, idx % n_);
    return out;
  }
  void clear() {
    for (std::size_t idx : touched_) {
      acc_(idx / n_, idx % n_) = Scalar();
      seen_[idx] = 0;
    }
    touched_.clear();
  }

 private:
  std::size_t n_;
  Matrix acc_;
  std::vector<char> seen_;
  std::vector<std::size_t> touched_;
};

}  // namespace detail

/// Checks e_i e_j = -e_j e_i for every pair i < j.
inline AnticommuteReport check_anticommuting(const MatrixFamily& fam) {
  AnticommuteReport report;
  std::vector<detail::SparseRows> sparse;
  sparse.reserve(fam.size());
  for (const auto& e : fam.members()) sparse.push_back(detail::sparse_rows(e));
  detail::Accumulator acc(fam.n());
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t j = i + 1; j < fam.size(); ++j) {
      acc.add_product(sparse[i], sparse[j]);
      acc.add_product(sparse[j], sparse[i]);
      if (!acc.is_zero()) report.violations.push_back({i, j, acc.value()});
      acc.clear();
    }
  report.holds = report.violations.empty();
  return report;
}

inline bool is_anticommuting(const MatrixFamily& fam) { return check_anticommuting(fam).holds; }

inline std::vector<Matrix> squares(const MatrixFamily& fam) {
  std::vector<Matrix> out;
  out.reserve(fam.size());
  for (const auto& e : fam.members()) out.push_back(mat_mul(e, e));
  return out;
}

/// Per member: e_i^2 != 0.
inline std::vector<bool> check_nonzero_squares(const MatrixFamily& fam) {
  std::vector<bool> out;
  for (const auto& sq : squares(fam)) out.push_back(!sq.is_zero());
  return out;
}

inline bool all_squares_nonzero(const MatrixFamily& fam) {
  for (bool b : check_nonzero_squares(fam))
    if (!b) return false;
  return true;
}

inline bool all_invertible(const MatrixFamily& fam) {
  for (const auto& e : fam.members())
    if (!is_invertible(e)) return false;
  return true;
}

/// 2*log2(n) + 1 printed with six decimals. Display only; every comparison
/// against this line is done in integer arithmetic elsewhere.
inline std::string log_threshold_text(std::size_t n) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", 2.0 * std::log2(static_cast<double>(n)) + 1.0);
  return buf;
}

struct RankStats {
  std::vector<std::size_t> per_member_rank;
  std::vector<std::size_t> per_member_sq_rank;
  std::vector<std::size_t> per_member_nth_rank;
  std::size_t sq_sum = 0;
  std::size_t nth_sum = 0;
  mpq_class conjecture_ratio{0};  // sq_sum / n
  std::string reference_threshold;  // 2 log2(n) + 1
};

/// Ranks of e_i, e_i^2 and e_i^n, their sums, and sq_sum / n measured
/// against the 2 log2(n) + 1 reference line. Nothing is asserted.
inline RankStats rank_stats(const MatrixFamily& fam) {
  RankStats s;
  for (const auto& e : fam.members()) {
    const std::size_t r1 = rank(e);
    const std::size_t r2 = rank(mat_mul(e, e));
    const std::size_t rn = stable_power_rank(e);
    s.per_member_rank.push_back(r1);
    s.per_member_sq_rank.push_back(r2);
    s.per_member_nth_rank.push_back(rn);
    s.sq_sum += r2;
    s.nth_sum += rn;
  }
  if (fam.n() > 0) {
    s.conjecture_ratio = mpq_class(static_cast<unsigned long>(s.sq_sum), static_cast<unsigned long>(fam.n()));
    s.conjecture_ratio.canonicalize();
    s.reference_threshold = log_threshold_text(fam.n());
  }
  return s;
}

/// Rank of the k x n^2 stack of flattened members equals k.
inline bool members_linearly_independent(const MatrixFamily& fam) {
  if (fam.empty()) return true;
  return rank(stack_flattened(fam.members())) == fam.size();
}

/// V e_i V^{-1} for every member.
inline MatrixFamily conjugate_family(const MatrixFamily& fam, const Matrix& v) {
  const Matrix v_inv = inverse(v);
  std::vector<Matrix> out;
  out.reserve(fam.size());
  for (const auto& e : fam.members()) out.push_back(conjugate_with_inverse(e, v, v_inv));
  return {fam.n(), std::move(out), fam.label()};
}

inline MatrixFamily subfamily(const MatrixFamily& fam, const std::vector<std::size_t>& indices) {
  std::vector<Matrix> out;
  for (auto i : indices) out.push_back(fam[i]);
  return {fam.n(), std::move(out), fam.label()};
}

}  // namespace acfam
