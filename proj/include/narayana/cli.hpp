#pragma once

// Command-line front end. `run_cli` is the whole program; tools/narayana.cpp
// only forwards argv and the standard streams.

#include <algorithm>
#include <optional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "narayana/bounds.hpp"
#include "narayana/error.hpp"
#include "narayana/reduction.hpp"
#include "narayana/report.hpp"
#include "narayana/repdigit.hpp"
#include "narayana/search.hpp"
#include "narayana/sequence.hpp"

namespace narayana::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationMismatch = 1,
  kPrecisionExhausted = 2,
  kUsage = 3,
};

inline constexpr const char* kPrecisionEnv = "NARAYANA_PRECISION";

struct RunConfig {
  int precision = kDefaultDigits;
  unsigned jobs = 1;
  std::string format = "table";
  BaseRange base_range{};
  unsigned nmax = 280;
  unsigned lmin = 3;
  bool allow_out_of_scope = false;
};

/// "2:100" or a single base "7".
inline BaseRange parse_base_range(const std::string& text) {
  auto parse = [&](const std::string& s) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw Error(ErrorKind::Precondition, "bad base range '" + text + "'");
    return v;
  };
  const auto colon = text.find(':');
  BaseRange r;
  if (colon == std::string::npos) {
    r.lo = r.hi = parse(text);
  } else {
    r.lo = parse(text.substr(0, colon));
    r.hi = parse(text.substr(colon + 1));
  }
  return r;
}

namespace detail {

using json = report::json;

inline json meta(const std::string& command, const RunConfig& cfg) {
  return {{"tool", report::kToolName},
          {"version", report::kToolVersion},
          {"command", command},
          {"precision", cfg.precision},
          {"config",
           {{"base_range", std::to_string(cfg.base_range.lo) + ":" + std::to_string(cfg.base_range.hi)},
            {"nmax", cfg.nmax},
            {"lmin", cfg.lmin},
            {"format", cfg.format}}}};
}

inline void csv_header(std::ostream& out, const std::string& command, const RunConfig& cfg) {
  out << "# " << report::kToolName << ' ' << report::kToolVersion << " command=" << command
      << " precision=" << cfg.precision << " base_range=" << cfg.base_range.lo << ':' << cfg.base_range.hi
      << " nmax=" << cfg.nmax << " lmin=" << cfg.lmin << "\r\n";
}

inline void emit_json(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

inline void check_scope(const RunConfig& cfg) {
  require(cfg.base_range.lo >= 2 && cfg.base_range.lo <= cfg.base_range.hi, "invalid base range");
  if (!cfg.base_range.within_verified_scope() && !cfg.allow_out_of_scope) {
    throw Error(ErrorKind::Precondition, "bases above 100 need --allow-out-of-scope");
  }
}

inline int cmd_seq(std::ostream& out, const RunConfig& cfg, unsigned from, unsigned to) {
  require(from <= to, "--from must not exceed --to");
  const auto terms = default_sequence().prefix(to);
  if (cfg.format == "json") {
    json arr = json::array();
    for (unsigned n = from; n <= to; ++n) arr.push_back({{"n", n}, {"value", terms[n].get_str()}});
    emit_json(out, {{"meta", meta("seq", cfg)}, {"terms", arr}});
  } else if (cfg.format == "csv") {
    csv_header(out, "seq", cfg);
    out << "n,value\r\n";
    for (unsigned n = from; n <= to; ++n) out << n << ',' << terms[n].get_str() << "\r\n";
  } else {
    for (unsigned n = from; n <= to; ++n) out << std::setw(6) << n << "  " << terms[n].get_str() << '\n';
  }
  return kOk;
}

inline int cmd_blocks(std::ostream& out, const RunConfig& cfg, const std::string& value_text, unsigned block_size) {
  mpz_class value;
  if (value.set_str(value_text, 10) != 0 || value < 1) {
    throw Error(ErrorKind::Precondition, "--value must be a positive integer");
  }
  auto match = as_block_repdigit(value, block_size);
  if (cfg.format == "json") {
    json result = match ? json{{"block", match->block.get_str()}, {"length", match->length}} : json(nullptr);
    emit_json(out, {{"meta", meta("blocks", cfg)}, {"result", result}});
  } else if (cfg.format == "csv") {
    csv_header(out, "blocks", cfg);
    out << "block,length\r\n";
    if (match) out << match->block.get_str() << ',' << match->length << "\r\n";
  } else if (match) {
    out << "block " << match->block.get_str() << " repeated " << match->length << " times\n";
  } else {
    out << "not a " << block_size << "-block repdigit\n";
  }
  return kOk;
}

inline int cmd_bound(std::ostream& out, const RunConfig& cfg, unsigned long base, bool all) {
  const auto& k = constants(Precision{cfg.precision});
  BaseRange range = all ? cfg.base_range : BaseRange{base, base};
  require(range.lo >= 2 && range.lo <= range.hi, "base must be at least 2");
  std::vector<BoundReport> reports;
  for (unsigned long b = range.lo; b <= range.hi; ++b) reports.push_back(search_bound(b, k));
  const bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.all_hold(); });

  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(report::bound(r));
    emit_json(out, {{"meta", meta("bound", cfg)}, {"bounds", arr}});
  } else if (cfg.format == "csv") {
    csv_header(out, "bound", cfg);
    out << "b,T,chain,M_b,M,checks\r\n";
    for (const auto& r : reports) {
      out << r.b << ',' << r.T.upper_str(8) << ',' << r.chain.upper_str(8) << ',' << r.M_b.upper_str(8) << ','
          << r.M.get_str() << ',' << (r.all_hold() ? "ok" : "failed") << "\r\n";
    }
  } else {
    for (const auto& r : reports) {
      out << "b = " << r.b << '\n'
          << "  lambda1 prefactor  " << r.lambda1_prefactor.upper_str(6) << "  (rounded " << r.coeff_lambda1.upper_str(2) << ")\n"
          << "  lambda2 prefactor  " << r.lambda2_prefactor.upper_str(6) << "  (rounded " << r.coeff_lambda2.upper_str(2) << ")\n"
          << "  gap coefficient    " << r.gap_coeff.upper_str(2) << '\n'
          << "  T                  " << r.T.upper_str(6) << '\n'
          << "  4 T log^2 T        " << r.chain.upper_str(6) << '\n'
          << "  M_b                " << r.M_b.upper_str(6) << '\n'
          << "  M                  " << r.M.get_str() << '\n';
      for (const auto& c : r.checks) out << "  [" << (c.holds ? "ok" : "FAILED") << "] " << c.name << '\n';
    }
  }
  return ok ? kOk : kVerificationMismatch;
}

inline std::vector<CampaignResult> campaign(const RunConfig& cfg) {
  return run_campaign(cfg.base_range.lo, cfg.base_range.hi, {Precision{cfg.precision}, cfg.jobs});
}

inline int cmd_reduce(std::ostream& out, const RunConfig& cfg, bool detail) {
  check_scope(cfg);
  const auto results = campaign(cfg);
  const auto s = summarize(results, Precision{cfg.precision});
  if (cfg.format == "json") {
    json bases = json::array();
    for (const auto& r : results) bases.push_back(report::campaign(r, detail));
    const auto c = step_coefficients(constants(Precision{cfg.precision}));
    json coeffs = {{"single_term", {{"used", kStep1SingleA}, {"exact", report::enclosure(c.single_term)}}},
                   {"gap", {{"used", kStep1GapA}, {"exact", report::enclosure(c.gap)}}},
                   {"step2", {{"used", kStep2A}, {"exact", report::enclosure(c.step2)}}}};
    emit_json(out, {{"meta", meta("reduce", cfg)},
                    {"coefficients", coeffs},
                    {"summary", report::summary(s)},
                    {"bases", bases}});
  } else if (cfg.format == "csv") {
    csv_header(out, "reduce", cfg);
    out << "b,kind,a,gap,q,epsilon_lower,threshold,retries,precision\r\n";
    for (const auto& r : results) {
      auto row = [&](const CaseRecord& c) {
        const Convergent* conv = r.convergent_of(c);
        std::ostringstream eps;
        eps << std::setprecision(17) << c.epsilon_lower;
        out << r.b << ',' << to_string(c.kind) << ',' << c.a << ',' << c.gap << ',' << (conv ? conv->q.get_str() : "")
            << ',' << eps.str() << ',' << c.threshold << ',' << c.retries << ',' << c.precision_digits << "\r\n";
      };
      for (const auto& c : r.step1) row(c);
      if (detail)
        for (const auto& c : r.step2) row(c);
    }
  } else {
    out << "   b  m=0 bound  gap bound  step-2 bound  failures\n";
    for (const auto& r : results) {
      out << std::setw(4) << r.b << std::setw(11) << r.step1_m0_bound << std::setw(11) << r.gap_bound << std::setw(14)
          << r.step2_bound << std::setw(10) << r.failures.size() << '\n';
    }
    out << "global: m=0 bound " << s.step1_m0_bound << ", n-m bound " << s.gap_bound << ", n bound " << s.step2_bound
        << " (" << s.cases << " cases, " << s.retried_cases << " needed a later convergent, " << s.escalated_cases
        << " needed more precision, " << s.failures << " failed)\n";
    const auto c = step_coefficients(constants(Precision{cfg.precision}));
    out << "constants: A = " << kStep1SingleA << " (exact " << c.single_term.upper_str(6) << "), " << kStep1GapA
        << " (exact " << c.gap.upper_str(6) << "), " << kStep2A << " (exact " << c.step2.upper_str(6) << ")\n";
  }
  return s.failures == 0 ? kOk : kPrecisionExhausted;
}

inline void print_solutions_table(std::ostream& out, const std::vector<SolutionTuple>& list) {
  if (list.empty()) return;
  out << "   n    m    l    a    b  value\n";
  for (const auto& s : list) {
    out << std::setw(4) << s.n << std::setw(5) << s.m << std::setw(5) << s.ell << std::setw(5) << s.a << std::setw(5)
        << s.b << "  " << s.value.get_str() << (s.trivial ? "  (trivial)" : "") << '\n';
  }
}

inline int cmd_search(std::ostream& out, const RunConfig& cfg) {
  check_scope(cfg);
  const auto found = enumerate_solutions(cfg.nmax, cfg.base_range, cfg.lmin, cfg.jobs);
  if (cfg.format == "json") {
    json doc = {{"meta", meta("search", cfg)}, {"solutions", report::solutions(found)}};
    if (!cfg.base_range.within_verified_scope()) doc["meta"]["note"] = "beyond paper scope";
    emit_json(out, doc);
  } else if (cfg.format == "csv") {
    csv_header(out, "search", cfg);
    out << report::solutions_csv(found);
  } else {
    if (!cfg.base_range.within_verified_scope()) out << "note: bases above 100 are beyond paper scope\n";
    print_solutions_table(out, found);
  }
  return kOk;
}

inline void print_verification(std::ostream& out, const VerificationReport& r) {
  out << "Table 1: " << r.table.matched << '/' << r.table.expected << '\n';
  for (const auto& s : r.table.missing) out << "  missing " << describe(s) << '\n';
  for (const auto& s : r.table.extra) out << "  extra   " << describe(s) << '\n';
  for (const auto& s : r.table.invalid) out << "  invalid " << describe(s) << '\n';
  for (const auto& c : r.checks) out << (c.passed ? "PASS  " : "FAIL  ") << c.name << " (" << c.detail << ")\n";
}

inline int cmd_verify(std::ostream& out, const RunConfig& cfg) {
  const auto r = run_verification(cfg.nmax, cfg.jobs);
  if (cfg.format == "json") {
    emit_json(out, {{"meta", meta("verify", cfg)}, {"verification", report::verification(r)}});
  } else {
    print_verification(out, r);
  }
  return r.ok() ? kOk : kVerificationMismatch;
}

/// bound -> reduce -> search below the reduced bound -> verify.
inline int cmd_pipeline(std::ostream& out, const RunConfig& cfg) {
  check_scope(cfg);
  const Precision p{cfg.precision};
  const auto& k = constants(p);

  std::vector<BoundReport> bounds;
  for (unsigned long b = cfg.base_range.lo; b <= cfg.base_range.hi; ++b) bounds.push_back(search_bound(b, k));
  const bool bounds_ok = std::all_of(bounds.begin(), bounds.end(), [](const auto& r) { return r.all_hold(); });

  const auto results = campaign(cfg);
  const auto s = summarize(results, p);
  const unsigned n_max = static_cast<unsigned>(std::max<long>(s.step2_bound, 1));

  const auto found = enumerate_solutions(n_max, cfg.base_range, 2, cfg.jobs);
  std::vector<SolutionTuple> nontrivial;
  for (const auto& t : found)
    if (t.ell >= 3) nontrivial.push_back(t);

  std::vector<SolutionTuple> expected;
  for (const auto& t : expected_table())
    if (t.b >= cfg.base_range.lo && t.b <= cfg.base_range.hi) expected.push_back(t);
  const auto table = compare_tables(nontrivial, expected);

  // Every solution must survive the reduction of its own (b, a, n - m) case.
  std::size_t unsound = 0;
  for (const auto& t : found) {
    const auto& r = results[t.b - cfg.base_range.lo];
    const auto a = static_cast<unsigned>(t.a);
    std::optional<long> thr;
    if (t.m == 0) {
      if (auto it = r.per_a.find(a); it != r.per_a.end()) thr = it->second.single_term;
    } else {
      thr = r.step2_threshold(a, static_cast<long>(t.n) - t.m);
    }
    const bool below = t.n < static_cast<unsigned>(kMinReducedN) || (thr && *thr >= 0 && t.n <= *thr);
    if (!below) ++unsound;
  }

  const bool full_scope = cfg.base_range.lo == kMinBase && cfg.base_range.hi == kMaxBase;
  std::optional<VerificationReport> corollaries;
  if (full_scope) corollaries = run_verification(n_max, cfg.jobs);

  const bool ok = bounds_ok && table.ok() && unsound == 0 && (!corollaries || corollaries->ok());
  if (cfg.format == "json") {
    json bases = json::array();
    for (const auto& r : results) {
      bases.push_back({{"b", r.b}, {"M", r.M.get_str()}, {"step1_m0_bound", r.step1_m0_bound},
                       {"gap_bound", r.gap_bound}, {"step2_bound", r.step2_bound}, {"failures", r.failures.size()}});
    }
    json doc = {{"meta", meta("pipeline", cfg)},
                {"bounds_ok", bounds_ok},
                {"M_max", bounds.back().M.get_str()},
                {"reduction", report::summary(s)},
                {"bases", bases},
                {"search_nmax", n_max},
                {"solutions_total", found.size()},
                {"solutions", report::solutions(nontrivial)},
                {"table", report::table(table)},
                {"solutions_above_threshold", unsound}};
    if (corollaries) doc["verification"] = report::verification(*corollaries);
    doc["ok"] = ok;
    emit_json(out, doc);
  } else {
    out << "bound:    M_b certified for bases " << cfg.base_range.lo << ".." << cfg.base_range.hi
        << (bounds_ok ? "" : " (CHECK FAILED)") << "; largest M = " << bounds.back().M.get_str() << '\n';
    out << "reduce:   m=0 bound " << s.step1_m0_bound << ", n-m bound " << s.gap_bound << ", n bound "
        << s.step2_bound << " (" << s.failures << " failed cases)\n";
    out << "search:   n <= " << n_max << ": " << found.size() << " solutions with l >= 2, " << nontrivial.size()
        << " with l >= 3\n";
    out << "soundness: " << unsound << " solutions above their reduction threshold\n";
    if (corollaries) {
      print_verification(out, *corollaries);
    } else {
      out << "Table 1: " << table.matched << '/' << table.expected << " (restricted to the requested bases)\n";
    }
    out << (ok ? "pipeline: all checks passed\n" : "pipeline: FAILED\n");
  }
  if (s.failures > 0) return kPrecisionExhausted;
  return ok ? kOk : kVerificationMismatch;
}

}  // namespace detail

/// Parses argv and runs one subcommand. Returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Repdigits as sums of two Narayana numbers: bounds, reduction, search and verification",
               "narayana"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string base_range = "2:100";
  app.add_option("--precision", cfg.precision, "working precision in decimal digits")
      ->envname(kPrecisionEnv)
      ->check(CLI::Range(kMinDigits, 100000));
  app.add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_flag("--allow-out-of-scope", cfg.allow_out_of_scope, "permit bases above 100");

  unsigned seq_from = 0, seq_to = 20;
  auto* seq = app.add_subcommand("seq", "print Narayana numbers");
  seq->add_option("--from", seq_from, "first index");
  seq->add_option("--to", seq_to, "last index");

  std::string block_value;
  unsigned block_size = 1;
  auto* blocks = app.add_subcommand("blocks", "test a value for an m-block repdigit");
  blocks->add_option("--value", block_value, "positive integer")->required();
  blocks->add_option("--block-size", block_size, "block size m")->check(CLI::Range(1u, 10000u));

  unsigned long bound_base = 2;
  bool bound_all = false;
  auto* bound = app.add_subcommand("bound", "absolute bound M_b on n");
  auto* base_opt = bound->add_option("--base", bound_base, "base b")->check(CLI::Range(2ul, 1000000ul));
  auto* all_opt = bound->add_flag("--all", bound_all, "every base in --base-range");
  bound->add_option("--base-range", base_range, "bases lo:hi");
  base_opt->excludes(all_opt);

  bool detail = false;
  auto* reduce = app.add_subcommand("reduce", "two-step continued-fraction reduction");
  reduce->add_option("--base-range", base_range, "bases lo:hi");
  reduce->add_flag("--detail", detail, "list every step-2 case");

  auto* search = app.add_subcommand("search", "exhaustive search below a bound on n");
  search->add_option("--nmax", cfg.nmax, "largest n")->check(CLI::Range(1u, 100000u));
  search->add_option("--base-range", base_range, "bases lo:hi");
  search->add_option("--lmin", cfg.lmin, "smallest length l")->check(CLI::Range(2u, 100000u));

  auto* verify = app.add_subcommand("verify", "solution table and corollary checks");
  verify->add_option("--nmax", cfg.nmax, "largest n")->check(CLI::Range(1u, 100000u));

  auto* pipeline = app.add_subcommand("pipeline", "bound, reduce, search and verify end to end");
  pipeline->add_option("--base-range", base_range, "bases lo:hi");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    cfg.base_range = parse_base_range(base_range);
    if (seq->parsed()) return detail::cmd_seq(out, cfg, seq_from, seq_to);
    if (blocks->parsed()) return detail::cmd_blocks(out, cfg, block_value, block_size);
    if (bound->parsed()) {
      if (!bound_all && *base_opt && bound_base > kMaxBase && !cfg.allow_out_of_scope) {
        throw Error(ErrorKind::Precondition, "bases above 100 need --allow-out-of-scope");
      }
      if (bound_all) detail::check_scope(cfg);
      return detail::cmd_bound(out, cfg, bound_base, bound_all);
    }
    if (reduce->parsed()) return detail::cmd_reduce(out, cfg, detail);
    if (search->parsed()) return detail::cmd_search(out, cfg);
    if (verify->parsed()) return detail::cmd_verify(out, cfg);
    if (pipeline->parsed()) return detail::cmd_pipeline(out, cfg);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    if (e.kind() == ErrorKind::PrecisionExhausted || e.kind() == ErrorKind::EpsilonNonPositive) {
      return kPrecisionExhausted;
    }
    if (e.kind() == ErrorKind::Precondition || e.kind() == ErrorKind::Domain) return kUsage;
    return kVerificationMismatch;
  }
  return kUsage;
}

}  // namespace narayana::cli
