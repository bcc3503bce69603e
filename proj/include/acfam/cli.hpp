#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "acfam/bounds.hpp"
#include "acfam/constructions.hpp"
#include "acfam/experiment.hpp"
#include "acfam/family.hpp"
#include "acfam/family_io.hpp"
#include "acfam/report.hpp"
#include "acfam/sos.hpp"
#include "acfam/structure.hpp"

namespace acfam {

namespace cli_detail {

struct Common {
  std::string out_path;
  std::uint64_t seed = 0;
  bool json = false;
  bool csv = false;
  bool quiet = false;
  std::string report_path;
};

// Re-indents every line after the first of a multi-line block.
inline std::string indent_tail(const std::string& text, std::size_t spaces) {
  std::string pad(spaces, ' ');
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    out += text[i];
    if (text[i] == '\n' && i + 1 < text.size()) out += pad;
  }
  if (!out.empty() && out.back() == '\n') out.pop_back();
  return out;
}

inline std::string bool_text(bool b) { return b ? "true" : "false"; }

class Session {
 public:
  Session(const Common& common, std::ostream& out, std::ostream& err, RunReport& report)
      : common_(common), out_(out), err_(err), report_(report) {}

  std::string read_input(const std::string& path) {
    std::string text = io::read_file(path);
    report_.inputs.push_back({path, sha256_hex(text)});
    return text;
  }
  MatrixFamily family(const std::string& path) { return parse_family(read_input(path)); }
  SosFormula formula(const std::string& path) { return parse_formula(read_input(path)); }

  void emit(const std::string& text) {
    if (common_.out_path.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(common_.out_path, std::ios::binary);
    if (!f) throw PreconditionError("cannot write " + common_.out_path);
    f << text;
  }
  void note(const std::string& text) {
    if (!common_.quiet) err_ << text << "\n";
  }
  void check(std::string name, bool pass, std::string certificate = {}) {
    report_.add(std::move(name), pass, std::move(certificate));
  }

  // Outcome listing used by the checking subcommands.
  std::string outcome_table() const {
    std::ostringstream s;
    std::size_t width = 5;
    for (const auto& o : report_.outcomes) width = std::max(width, o.check.size());
    for (const auto& o : report_.outcomes)
      s << std::left << std::setw(static_cast<int>(width) + 2) << o.check << (o.pass ? "PASS" : "FAIL") << "  "
        << o.certificate << "\n";
    return s.str();
  }

  const Common& common() const { return common_; }
  RunReport& report() { return report_; }

 private:
  const Common& common_;
  std::ostream& out_;
  std::ostream& err_;
  RunReport& report_;
};

inline std::string matrix_rows_json(const Matrix& m) { return io::compact_matrix(m); }

inline std::string decomposition_json(const MatrixFamily& source, const Decomposition& d) {
  std::string out = "{\n";
  out += "  \"format\": \"decomposition-v1\",\n";
  out += "  \"source\": " + indent_tail(serialize_family(source), 2) + ",\n";
  out += "  \"basis\": " + matrix_rows_json(d.basis) + ",\n";
  out += "  \"exhausted\": " + bool_text(d.exhausted) + ",\n";
  out += "  \"blocks\": [\n";
  for (std::size_t b = 0; b < d.blocks.size(); ++b) {
    const auto& blk = d.blocks[b];
    out += "    {\n";
    out += "      \"offset\": " + std::to_string(blk.offset) + ",\n";
    out += "      \"size\": " + std::to_string(blk.size) + ",\n";
    out += "      \"family\": " + indent_tail(serialize_family(blk.family), 6) + "\n";
    out += b + 1 < d.blocks.size() ? "    },\n" : "    }\n";
  }
  out += "  ]\n}\n";
  return out;
}

inline std::string triangularization_json(const MatrixFamily& source, const Matrix& v, const MatrixFamily& conj) {
  std::string out = "{\n";
  out += "  \"format\": \"triangularization-v1\",\n";
  out += "  \"source\": " + indent_tail(serialize_family(source), 2) + ",\n";
  out += "  \"V\": " + matrix_rows_json(v) + ",\n";
  out += "  \"family\": " + indent_tail(serialize_family(conj), 2) + "\n";
  out += "}\n";
  return out;
}

inline std::string witness_json(const MatrixFamily& fam, const WitnessCertificate& c, std::uint64_t seed) {
  std::string out = "{\n";
  out += "  \"format\": \"witness-v1\",\n";
  out += "  \"n\": " + std::to_string(fam.n()) + ",\n";
  out += "  \"k\": " + std::to_string(fam.size()) + ",\n";
  out += "  \"seed\": " + std::to_string(seed) + ",\n";
  out += "  \"attempts\": " + std::to_string(c.attempts) + ",\n";
  out += "  \"box\": " + std::to_string(c.box) + ",\n";
  out += "  \"u\": " + matrix_rows_json(c.u) + ",\n";
  out += "  \"v\": " + matrix_rows_json(c.v) + ",\n";
  out += "  \"M\": " + matrix_rows_json(c.m) + ",\n";
  out += "  \"rank_M\": " + std::to_string(c.rank_m) + ",\n";
  out += "  \"source\": " + indent_tail(serialize_family(fam), 2) + "\n";
  out += "}\n";
  return out;
}

// ---- verification of every artifact kind --------------------------------

inline void verify_family(Session& s, const MatrixFamily& fam, const std::string& prefix = {}) {
  const AnticommuteReport rep = check_anticommuting(fam);
  std::string cert = "k=" + std::to_string(fam.size()) + " n=" + std::to_string(fam.n());
  for (const auto& v : rep.violations)
    cert += "; e_" + std::to_string(v.i) + "e_" + std::to_string(v.j) + "+e_" + std::to_string(v.j) + "e_" +
            std::to_string(v.i) + "!=0";
  s.check(prefix + "anticommuting", rep.holds, cert);
}

inline void verify_formula(Session& s, const SosFormula& f) {
  const bool h = verify_hurwitz_equations(f);
  const bool e = verify_by_expansion(f);
  s.check("hurwitz-equations", h, "k=" + std::to_string(f.k()) + " n=" + std::to_string(f.n()));
  s.check("expansion", e, "quartic coefficients compared");
  s.check("verifiers-agree", h == e);
}

inline void verify_decomposition(Session& s, const io::json& j) {
  if (!j.contains("basis") || !j.contains("blocks") || !j["blocks"].is_array() || !j["basis"].is_array())
    throw ParseError("decomposition-v1 needs \"basis\" and \"blocks\"");
  const std::size_t n = j["basis"].size();
  Decomposition d;
  d.basis = io::matrix_from_json(j["basis"], n, n, "basis");
  std::size_t offset = 0;
  for (std::size_t b = 0; b < j["blocks"].size(); ++b) {
    const auto& blk = j["blocks"][b];
    if (!blk.is_object() || !blk.contains("family")) throw ParseError("block without family");
    MatrixFamily fam = family_from_json(blk["family"]);
    const std::size_t off = io::require_count(blk, "offset");
    const std::size_t size = io::require_count(blk, "size");
    if (off != offset || size != fam.n()) throw ParseError("block offsets/sizes inconsistent");
    if (!d.blocks.empty() && fam.size() != d.blocks.front().family.size())
      throw ParseError("blocks have different member counts");
    verify_family(s, fam, "block" + std::to_string(b) + ".");
    d.blocks.push_back({off, size, std::move(fam)});
    offset += size;
  }
  if (offset != n) throw ParseError("block sizes do not add up to n");
  if (!j.contains("source")) throw ParseError("decomposition-v1 needs \"source\"");
  const MatrixFamily source = family_from_json(j["source"]);
  if (source.n() != n || (!d.blocks.empty() && d.blocks.front().family.size() != source.size()))
    throw ParseError("source family does not match the blocks");
  const bool inv = is_invertible(d.basis);
  s.check("basis-invertible", inv);
  if (inv) s.check("reassembles-source", reassemble(d, n) == source, "V^-1 (+)blocks V");
}

inline void verify_triangularization(Session& s, const io::json& j) {
  if (!j.contains("V") || !j.contains("family")) throw ParseError("triangularization-v1 needs \"V\" and \"family\"");
  const MatrixFamily fam = family_from_json(j["family"]);
  const Matrix v = io::matrix_from_json(j["V"], fam.n(), fam.n(), "V");
  if (!j.contains("source")) throw ParseError("triangularization-v1 needs \"source\"");
  const MatrixFamily source = family_from_json(j["source"]);
  if (source.n() != fam.n() || source.size() != fam.size())
    throw ParseError("source family does not match the triangular family");
  verify_family(s, fam);
  bool upper = true;
  for (const auto& e : fam.members()) upper = upper && is_strictly_upper(e);
  s.check("strictly-upper", upper);
  const bool inv = is_invertible(v);
  s.check("V-invertible", inv);
  if (inv) s.check("conjugates-source", conjugate_family(source, v) == fam, "V e_i V^-1");
}

inline void verify_witness(Session& s, const io::json& j) {
  const std::size_t n = io::require_count(j, "n");
  const std::size_t k = io::require_count(j, "k");
  if (!j.contains("M")) throw ParseError("witness-v1 needs \"M\"");
  const Matrix m = io::matrix_from_json(j["M"], k, k, "M");
  if (!j.contains("u") || !j.contains("v") || !j.contains("source"))
    throw ParseError("witness-v1 needs \"u\", \"v\" and \"source\"");
  const MatrixFamily source = family_from_json(j["source"]);
  if (source.n() != n || source.size() != k) throw ParseError("source family does not match n and k");
  const Matrix u = io::matrix_from_json(j["u"], 1, n, "u");
  const Matrix vt = transpose(io::matrix_from_json(j["v"], 1, n, "v"));
  Matrix recomputed(k, k);
  for (std::size_t a = 0; a < k; ++a) {
    const Matrix ue = mat_mul(u, source[a]);
    for (std::size_t b = 0; b < k; ++b) recomputed(a, b) = mat_mul(mat_mul(ue, source[b]), vt)(0, 0);
  }
  verify_family(s, source, "source.");
  s.check("M=u e_i e_j v^t", recomputed == m);
  const std::size_t r = rank(m);
  s.check("symmetric-part-diagonal-nonzero", detail::symmetric_part_is_nonzero_diagonal(m));
  s.check("k<=2rank(M)<=2n", k <= 2 * r && r <= n,
          "k=" + std::to_string(k) + " rank=" + std::to_string(r) + " n=" + std::to_string(n));
}

inline void finish_checks(Session& s) {
  if (s.common().json) {
    s.report().exit_code = s.report().all_pass() ? 0 : 1;
    s.emit(serialize_report(s.report()));
  } else {
    s.emit(s.outcome_table());
  }
}

// ---- subcommand bodies -----------------------------------------------------

inline void cmd_stats(Session& s, const MatrixFamily& fam) {
  const RankStats st = rank_stats(fam);
  std::ostringstream o;
  if (s.common().json) {
    nlohmann::ordered_json j;
    j["n"] = fam.n();
    j["k"] = fam.size();
    j["rank"] = st.per_member_rank;
    j["sq_rank"] = st.per_member_sq_rank;
    j["nth_rank"] = st.per_member_nth_rank;
    j["sq_sum"] = st.sq_sum;
    j["nth_sum"] = st.nth_sum;
    j["ratio"] = st.conjecture_ratio.get_str();
    j["threshold"] = st.reference_threshold;
    o << j.dump(2) << "\n";
  } else {
    o << "member,rank,sq_rank,nth_rank\n";
    for (std::size_t i = 0; i < fam.size(); ++i)
      o << i << "," << st.per_member_rank[i] << "," << st.per_member_sq_rank[i] << "," << st.per_member_nth_rank[i]
        << "\n";
    if (!s.common().csv)
      o << "n=" << fam.n() << " k=" << fam.size() << " sq_sum=" << st.sq_sum << " nth_sum=" << st.nth_sum
        << " ratio=" << st.conjecture_ratio.get_str() << " threshold=" << st.reference_threshold << "\n";
  }
  s.check("stats", true, "sq_sum=" + std::to_string(st.sq_sum));
  s.emit(o.str());
}

inline void cmd_bounds(Session& s, const MatrixFamily& fam) {
  const std::size_t n = fam.n(), k = fam.size();
  verify_family(s, fam);
  if (!s.report().all_pass() || n == 0) {
    finish_checks(s);
    return;
  }
  if (all_invertible(fam))
    s.check("invertible-bound", k <= invertible_bound(n),
            "k=" + std::to_string(k) + " <= " + std::to_string(invertible_bound(n)));
  if (all_squares_nonzero(fam)) {
    const long a = alpha_closed_form(n);
    s.check("alpha-bound", static_cast<long>(k) <= a, "k=" + std::to_string(k) + " <= " + std::to_string(a));
    if (k > 0) {
      try {
        const WitnessCertificate c = witness_certificate(fam, s.common().seed);
        s.check("witness", true,
                "rank(M)=" + std::to_string(c.rank_m) + " attempts=" + std::to_string(c.attempts));
      } catch (const SamplingError& e) {
        s.check("witness", false, e.what());
      }
    }
  }
  const HighRankReport hr = check_high_rank_bounds(fam);
  for (const auto& c : hr.conditions)
    if (c.applicable) s.check("high-rank " + c.name, c.holds, c.detail);
  const NthPowerCheck np = nth_power_check(fam);
  s.check("nth-power-bound", np.holds, "sum=" + std::to_string(np.nth_sum) + " n=" + std::to_string(n));
  if (all_invertible(fam) && k >= 1 && k <= 10 && n <= 16) {
    const ProductIndependence pi = products_independent(fam, k, false);
    s.check("even-products-independent", pi.independent, std::to_string(pi.product_count) + " products");
  }
  finish_checks(s);
}

inline void cmd_alpha(Session& s, std::size_t n_max) {
  const AlphaTable t = alpha(n_max);
  bool agree = true;
  for (const auto& r : t.rows) agree = agree && r.alpha == alpha_closed_form(r.n);
  std::ostringstream o;
  if (s.common().json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : t.rows) j.push_back({{"n", r.n}, {"alpha", r.alpha}, {"branch", std::string(1, r.branch)}});
    o << j.dump(2) << "\n";
  } else {
    o << "n,alpha,branch\n";
    for (const auto& r : t.rows) o << r.n << "," << r.alpha << "," << r.branch << "\n";
  }
  s.check("alpha-closed-form", agree, "n<=" + std::to_string(n_max));
  s.emit(o.str());
}

inline void cmd_experiment(Session& s, std::size_t n, std::size_t k, std::size_t trials, const std::string& mix) {
  GeneratorMix m = GeneratorMix::Any;
  if (mix == "clifford") m = GeneratorMix::Clifford;
  if (mix == "corner") m = GeneratorMix::Corner;
  const ExperimentReport rep = random_family_experiment(n, k, s.common().seed, trials, m);
  s.check("anticommuting", true, std::to_string(rep.rows.size()) + " families verified");
  if (!s.common().json) {
    s.emit(experiment_csv(rep));
    return;
  }
  nlohmann::ordered_json j;
  j["n"] = rep.n;
  j["k"] = rep.k;
  j["seed"] = rep.seed;
  j["threshold"] = rep.threshold;
  j["n_log2_n"] = rep.n_log2_n;
  j["trials"] = nlohmann::ordered_json::array();
  for (const auto& r : rep.rows)
    j["trials"].push_back({{"trial", r.trial},
                           {"k", r.k},
                           {"sq_sum", r.sq_sum},
                           {"nth_sum", r.nth_sum},
                           {"ratio", r.ratio.get_str()},
                           {"parts", r.parts}});
  s.emit(j.dump(2) + "\n");
}

// The tour: every construction generated and every checker run on it.
inline void cmd_demo(Session& s) {
  // Clifford tightness.
  for (std::size_t q = 0; q <= 3; ++q) {
    const MatrixFamily f = clifford_family(q);
    const RankStats st = rank_stats(f);
    const std::size_t n = f.n();
    s.check("clifford q=" + std::to_string(q),
            f.size() == 2 * q + 1 && all_invertible(f) && is_anticommuting(f) && st.sq_sum == (2 * q + 1) * n,
            "k=" + std::to_string(f.size()) + " sq_sum=" + std::to_string(st.sq_sum));
  }
  bool padded_ok = true;
  for (std::size_t n = 1; n <= 32; ++n) {
    const auto q = static_cast<std::size_t>(std::countr_zero(n));
    const MatrixFamily f = padded_clifford(n >> q, q);
    padded_ok = padded_ok && f.size() == invertible_bound(n) && all_invertible(f) && is_anticommuting(f);
  }
  s.check("padded clifford n<=32", padded_ok, "k = 2 v2(n) + 1");
  const AlphaTable t = alpha(1000);
  bool alpha_ok = true;
  for (const auto& r : t.rows) alpha_ok = alpha_ok && r.alpha == alpha_closed_form(r.n);
  s.check("alpha table n<=1000", alpha_ok, "alpha(100)=" + std::to_string(t.at(100)));
  bool corner_ok = true;
  for (std::size_t n = 5; n <= 12; ++n) {
    const MatrixFamily f = verify_alpha_lower_bound(n);
    std::size_t nil = 0;
    for (const auto& e : f.members()) nil += is_nilpotent(e) ? 1 : 0;
    corner_ok = corner_ok && nil == 2 * n - 4;
  }
  s.check("corner families n=5..12", corner_ok, "2n-3 members, 2n-4 nilpotent");
  bool witness_ok = true;
  for (std::size_t n = 5; n <= 10; ++n) {
    const MatrixFamily f = corner_family(n);
    const WitnessCertificate c = witness_certificate(f, s.common().seed + n);
    std::vector<std::size_t> idx;
    for (std::size_t i = 1; i < f.size(); ++i) idx.push_back(i);
    const MatrixFamily nil = subfamily(f, idx);
    const MatrixFamily tri = conjugate_family(nil, simultaneous_triangularize(nil));
    const WitnessCertificate ct = witness_certificate(tri, s.common().seed + n);
    witness_ok = witness_ok && c.diag_nonzero && f.size() <= 2 * c.rank_m && ct.rank_m == n - 2;
  }
  s.check("witness certificates n=5..10", witness_ok, "rank(M)=n-2 on nilpotent part");
  const ProductIndependence pi = products_independent(clifford_family(2), 5, false);
  s.check("even products clifford q=2", pi.independent && pi.product_count == 16,
          std::to_string(pi.rank) + "/" + std::to_string(pi.product_count));
  bool nth_ok = true;
  const std::vector<MatrixFamily> gens = {clifford_family(1), clifford_family(2), corner_family(3), corner_family(5),
                                          padded_clifford(3, 1)};
  for (const auto& a : gens) {
    nth_ok = nth_ok && check_nth_power_bound(a);
    for (const auto& b : gens) nth_ok = nth_ok && check_nth_power_bound(direct_sum_families(a, b));
  }
  s.check("nth power bound on sums", nth_ok, std::to_string(gens.size() * (gens.size() + 1)) + " families");
  const MatrixFamily mixed = direct_sum_families(clifford_family(1), corner_family(3));
  const Decomposition d = decompose(mixed);
  bool classes_ok = true;
  for (const auto& b : d.blocks) {
    if (b.family.n() == 0) continue;
    const Decomposition inner = decompose(b.family);
    if (inner.blocks.size() != 1 || !inner.exhausted) continue;
    classes_ok = classes_ok && classify_irreducible(b.family).spectra_pm_pairs;
  }
  s.check("decompose clifford(1)+corner(3)", d.blocks.size() >= 2 && reassemble(d, mixed.n()) == mixed && classes_ok,
          std::to_string(d.blocks.size()) + " blocks");
  bool sos_ok = true;
  for (std::size_t k : {1, 2, 4, 8}) {
    const SosFormula f = builtin_formula(k);
    sos_ok = sos_ok && verify_hurwitz_equations(f) && verify_by_expansion(f);
  }
  s.check("builtin composition formulas", sos_ok, "k=1,2,4,8");
  const MatrixFamily qf = formula_to_family(builtin_formula(4));
  const RankStats qs = rank_stats(qf);
  s.check("quaternion nilpotent family", qf.n() == 12 && is_anticommuting(qf) && qs.sq_sum == 16,
          "sq_sum=" + std::to_string(qs.sq_sum));
  const MatrixFamily oi = formula_to_invertibles(builtin_formula(8));
  s.check("octonion invertibles", oi.size() == 7 && oi.size() == invertible_bound(8), "k=7 n=8");
  const ExperimentReport ex = random_family_experiment(16, 9, s.common().seed, 3, GeneratorMix::Clifford);
  bool ratio_ok = true;
  for (const auto& r : ex.rows) ratio_ok = ratio_ok && r.ratio <= 9;
  s.check("experiment n=16 clifford sums", ratio_ok, "ratio <= 9");
  finish_checks(s);
}

inline std::vector<std::string> reversed(const std::vector<std::string>& args) {
  return {args.rbegin(), args.rend()};
}

}  // namespace cli_detail

/// Runs one acfam invocation. args excludes the program name. Artifacts go
/// to `out` (or --out), diagnostics to `err`.
inline RunReport run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;
  RunReport report;
  report.command = "acfam";
  for (const auto& a : args) report.command += " " + a;

  Common common;
  CLI::App app{"Exact toolkit for families of anticommuting matrices", "acfam"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("-o,--out", common.out_path, "Write the artifact to FILE instead of stdout");
  app.add_option("--seed", common.seed, "Seed for every random choice");
  auto* json_flag = app.add_flag("--json", common.json, "JSON output");
  app.add_flag("--csv", common.csv, "CSV output")->excludes(json_flag);
  app.add_flag("--quiet", common.quiet, "Suppress diagnostics");
  app.add_option("--report", common.report_path, "Write a report-v1 file");

  std::size_t q = 0, n = 0, m = 1, max_n = 0, k = 0, trials = 1;
  std::string path_a, path_b, mix = "any";

  auto* gen = app.add_subcommand("gen", "Generate a family");
  gen->require_subcommand(1);
  auto* gen_clifford = gen->add_subcommand("clifford", "Clifford family with 2q+1 members");
  gen_clifford->add_option("--q", q)->required();
  auto* gen_corner = gen->add_subcommand("corner", "Nilpotent corner family of size n");
  gen_corner->add_option("--n", n)->required();
  auto* gen_padded = gen->add_subcommand("padded", "Clifford family tensored with I_m");
  gen_padded->add_option("--m", m)->required();
  gen_padded->add_option("--q", q)->required();
  auto* gen_dsum = gen->add_subcommand("dsum", "Direct sum of two families");
  gen_dsum->add_option("A", path_a)->required();
  gen_dsum->add_option("B", path_b)->required();

  auto* verify = app.add_subcommand("verify", "Re-verify any artifact");
  verify->add_option("FILE", path_a)->required();
  auto* stats = app.add_subcommand("stats", "Rank statistics of a family");
  stats->add_option("FAM", path_a)->required();
  auto* decomp = app.add_subcommand("decompose", "Simultaneous block decomposition");
  decomp->add_option("FAM", path_a)->required();
  auto* tri = app.add_subcommand("triangularize", "Simultaneous strict upper triangular form");
  tri->add_option("FAM", path_a)->required();
  auto* bnd = app.add_subcommand("bounds", "Run every applicable bound checker");
  bnd->add_option("FAM", path_a)->required();
  auto* alp = app.add_subcommand("alpha", "Table of alpha(n)");
  alp->add_option("--max", max_n)->required()->check(CLI::PositiveNumber);
  auto* wit = app.add_subcommand("witness", "Witness matrix certificate for k <= 2n");
  wit->add_option("FAM", path_a)->required();

  auto* sos = app.add_subcommand("sos", "Sum-of-squares formulas");
  sos->require_subcommand(1);
  auto* sos_verify = sos->add_subcommand("verify", "Check a formula with both verifiers");
  sos_verify->add_option("F", path_a)->required();
  auto* sos_family = sos->add_subcommand("to-family", "Nilpotent family of a formula");
  sos_family->add_option("F", path_a)->required();
  auto* sos_inv = sos->add_subcommand("to-invertibles", "Invertible family of a square formula");
  sos_inv->add_option("F", path_a)->required();
  auto* sos_builtin = sos->add_subcommand("builtin", "Composition formula of dimension 1, 2, 4 or 8");
  sos_builtin->add_option("--k", k)->required();

  auto* demo = app.add_subcommand("demo", "Generate every construction and run every checker");
  auto* exp = app.add_subcommand("experiment", "Random valid families: sum rank(e_i^2) against n");
  exp->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  exp->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  exp->add_option("--trials", trials)->check(CLI::PositiveNumber);
  exp->add_option("--mix", mix)->check(CLI::IsMember({"any", "clifford", "corner"}));

  try {
    std::vector<std::string> rev = reversed(args);
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    report.exit_code = 0;
    return report;
  } catch (const CLI::ParseError& e) {
    err << "acfam: " << e.what() << "\n" << app.help();
    report.add("arguments", false, e.what());
    report.exit_code = 2;
    return report;
  }

  Session s(common, out, err, report);
  try {
    if (gen->parsed()) {
      MatrixFamily fam;
      if (gen_clifford->parsed()) fam = clifford_family(q);
      if (gen_corner->parsed()) fam = corner_family(n);
      if (gen_padded->parsed()) fam = padded_clifford(m, q);
      if (gen_dsum->parsed()) fam = direct_sum_families(s.family(path_a), s.family(path_b));
      s.check("generated", true, fam.label());
      s.emit(serialize_family(fam));
    } else if (verify->parsed()) {
      const io::json j = io::parse_json_text(s.read_input(path_a));
      const std::string format = j.is_object() && j.contains("format") && j["format"].is_string()
                                     ? j["format"].get<std::string>()
                                     : std::string();
      if (format == "acfam-v1")
        verify_family(s, family_from_json(j));
      else if (format == "sosf-v1")
        verify_formula(s, formula_from_json(j));
      else if (format == "decomposition-v1")
        verify_decomposition(s, j);
      else if (format == "triangularization-v1")
        verify_triangularization(s, j);
      else if (format == "witness-v1")
        verify_witness(s, j);
      else
        throw ParseError("unknown artifact format \"" + format + "\"");
      finish_checks(s);
    } else if (stats->parsed()) {
      cmd_stats(s, s.family(path_a));
    } else if (decomp->parsed()) {
      const MatrixFamily fam = s.family(path_a);
      const Decomposition d = decompose(fam);
      s.check("decomposed", reassemble(d, fam.n()) == fam, std::to_string(d.blocks.size()) + " blocks");
      s.emit(decomposition_json(fam, d));
    } else if (tri->parsed()) {
      const MatrixFamily fam = s.family(path_a);
      const Matrix v = simultaneous_triangularize(fam);
      const MatrixFamily conj = conjugate_family(fam, v);
      s.check("triangularized", true);
      s.emit(triangularization_json(fam, v, conj));
    } else if (bnd->parsed()) {
      cmd_bounds(s, s.family(path_a));
    } else if (alp->parsed()) {
      cmd_alpha(s, max_n);
    } else if (wit->parsed()) {
      const MatrixFamily fam = s.family(path_a);
      const WitnessCertificate c = witness_certificate(fam, common.seed);
      s.check("witness", true, "rank(M)=" + std::to_string(c.rank_m));
      s.emit(witness_json(fam, c, common.seed));
    } else if (sos->parsed()) {
      if (sos_verify->parsed()) {
        verify_formula(s, s.formula(path_a));
        finish_checks(s);
      } else if (sos_family->parsed()) {
        const MatrixFamily fam = formula_to_family(s.formula(path_a));
        s.check("to-family", true, fam.label());
        s.emit(serialize_family(fam));
      } else if (sos_inv->parsed()) {
        const MatrixFamily fam = formula_to_invertibles(s.formula(path_a));
        s.check("to-invertibles", true, fam.label());
        s.emit(serialize_family(fam));
      } else if (sos_builtin->parsed()) {
        const SosFormula f = builtin_formula(k);
        s.check("builtin", true, "k=" + std::to_string(k));
        s.emit(serialize_formula(f));
      }
    } else if (demo->parsed()) {
      cmd_demo(s);
    } else if (exp->parsed()) {
      cmd_experiment(s, n, k, trials, mix);
    }
    report.exit_code = report.all_pass() ? 0 : 1;
    if (report.exit_code != 0)
      for (const auto& o : report.outcomes)
        if (!o.pass) s.note("acfam: check failed: " + o.check + (o.certificate.empty() ? "" : " (" + o.certificate + ")"));
  } catch (const ParseError& e) {
    err << "acfam: malformed input: " << e.what() << "\n";
    report.add("input", false, e.what());
    report.exit_code = 2;
  } catch (const ShapeError& e) {
    err << "acfam: malformed input: " << e.what() << "\n";
    report.add("input", false, e.what());
    report.exit_code = 2;
  } catch (const std::exception& e) {
    err << "acfam: " << e.what() << "\n";
    report.add("precondition", false, e.what());
    report.exit_code = 1;
  }
  if (!common.report_path.empty()) {
    std::ofstream f(common.report_path, std::ios::binary);
    f << serialize_report(report);
  }
  return report;
}

}  // namespace acfam
