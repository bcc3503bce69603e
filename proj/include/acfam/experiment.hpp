#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "acfam/bounds.hpp"
#include "acfam/constructions.hpp"
#include "acfam/family.hpp"

namespace acfam {

/// Random integer matrix with entries in [-bound, bound], redrawn until
/// invertible.
inline Matrix random_invertible(std::size_t n, std::mt19937_64& rng, std::uint64_t bound = 2) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Matrix v(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) v(i, j) = detail::draw(rng, bound);
    if (is_invertible(v)) return v;
  }
  throw SamplingError("random_invertible: no invertible draw");
}

enum class GeneratorMix { Any, Clifford, Corner };

struct ExperimentRow {
  std::size_t trial = 0;
  std::size_t k = 0;
  std::size_t sq_sum = 0;
  std::size_t nth_sum = 0;
  mpq_class ratio{0};  // sq_sum / n
  std::string parts;
};

struct ExperimentReport {
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::string threshold;  // 2 log2 n + 1
  std::string n_log2_n;
  std::vector<ExperimentRow> rows;
};

namespace detail {

inline MatrixFamily random_part(std::size_t s, GeneratorMix mix, std::mt19937_64& rng, std::string& name) {
  const std::size_t q = static_cast<std::size_t>(std::countr_zero(s));
  const std::size_t m = s >> q;
  bool use_corner = false;
  if (mix == GeneratorMix::Corner) use_corner = s >= 3;
  if (mix == GeneratorMix::Any) use_corner = s >= 3 && (rng() & 1U);
  if (use_corner) {
    name = "corner(" + std::to_string(s) + ")";
    return corner_family(s);
  }
  name = "padded(" + std::to_string(m) + "," + std::to_string(q) + ")";
  return padded_clifford(m, q);
}

}  // namespace detail

/// Builds `trials` valid anticommuting families of size n from direct sums
/// of generator outputs, keeps a random subset of at most k members,
/// conjugates by a random invertible integer matrix, verifies
/// anticommutation, and records sum rank(e_i^2) against n. Measurement
/// only: nothing about the ratio is asserted.
inline ExperimentReport random_family_experiment(std::size_t n, std::size_t k, std::uint64_t seed, std::size_t trials,
                                                 GeneratorMix mix = GeneratorMix::Any) {
  if (n < 1 || k < 1 || trials < 1) throw PreconditionError("random_family_experiment: n, k, trials must be positive");
  ExperimentReport rep;
  rep.n = n;
  rep.k = k;
  rep.seed = seed;
  rep.threshold = log_threshold_text(n);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", static_cast<double>(n) * std::log2(static_cast<double>(n)));
  rep.n_log2_n = buf;
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    std::size_t remaining = n;
    MatrixFamily fam;
    bool first = true;
    std::string parts;
    while (remaining > 0) {
      const std::size_t s = 1 + static_cast<std::size_t>(rng() % remaining);
      std::string name;
      MatrixFamily part = detail::random_part(s, mix, rng, name);
      fam = first ? part : direct_sum_families(fam, part);
      parts += (first ? "" : "+") + name;
      first = false;
      remaining -= s;
    }
    if (fam.size() > k) {
      std::vector<std::size_t> idx(fam.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      for (std::size_t i = idx.size() - 1; i > 0; --i) std::swap(idx[i], idx[rng() % (i + 1)]);
      idx.resize(k);
      std::sort(idx.begin(), idx.end());
      fam = subfamily(fam, idx);
    }
    fam = conjugate_family(fam, random_invertible(n, rng));
    if (!is_anticommuting(fam)) throw InternalError("random_family_experiment: produced a non-anticommuting family");
    const RankStats st = rank_stats(fam);
    rep.rows.push_back({t, fam.size(), st.sq_sum, st.nth_sum, st.conjecture_ratio, parts});
  }
  return rep;
}

inline std::string experiment_csv(const ExperimentReport& rep) {
  std::string out = "trial,n,k,sq_sum,nth_sum,ratio,threshold,n_log2_n,parts\n";
  for (const auto& r : rep.rows) {
    out += std::to_string(r.trial) + "," + std::to_string(rep.n) + "," + std::to_string(r.k) + "," +
           std::to_string(r.sq_sum) + "," + std::to_string(r.nth_sum) + "," + r.ratio.get_str() + "," +
           rep.threshold + "," + rep.n_log2_n + "," + r.parts + "\n";
  }
  return out;
}

}  // namespace acfam
