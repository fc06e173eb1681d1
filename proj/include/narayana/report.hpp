#pragma once

// JSON and CSV renderings of the library's results. Exact integers that can
// exceed 64 bits are emitted as decimal strings.

#include <gmpxx.h>

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "narayana/bounds.hpp"
#include "narayana/reduction.hpp"
#include "narayana/search.hpp"

namespace narayana::report {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "narayana-repdigits";
inline constexpr const char* kToolVersion = "1.0.0";

inline json enclosure(const RealEnclosure& x, int significant = 20) {
  return {{"lower", x.lower_str(significant)}, {"upper", x.upper_str(significant)}};
}

inline json solution(const SolutionTuple& s) {
  return {{"n", s.n}, {"m", s.m}, {"l", s.ell}, {"a", s.a}, {"b", s.b}, {"value", s.value.get_str()}, {"trivial", s.trivial}};
}

inline json solutions(const std::vector<SolutionTuple>& list) {
  json arr = json::array();
  for (const auto& s : list) arr.push_back(solution(s));
  return arr;
}

inline json bound(const BoundReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"holds", c.holds}});
  return {
      {"b", r.b},
      {"lambda1_prefactor", enclosure(r.lambda1_prefactor)},
      {"coeff_lambda1", enclosure(r.coeff_lambda1)},
      {"gap_coeff", enclosure(r.gap_coeff)},
      {"lambda2_prefactor", enclosure(r.lambda2_prefactor)},
      {"coeff_lambda2", enclosure(r.coeff_lambda2)},
      {"T", enclosure(r.T)},
      {"chain", enclosure(r.chain)},
      {"chain_simplified", enclosure(r.chain_simplified)},
      {"M_b", enclosure(r.M_b)},
      {"M", r.M.get_str()},
      {"checks", checks},
  };
}

inline json case_record(const CampaignResult& r, const CaseRecord& c) {
  json j = {{"kind", to_string(c.kind)}, {"a", c.a}};
  if (c.kind == CaseKind::Step2) j["gap"] = c.gap;
  const Convergent* conv = r.convergent_of(c);
  j["convergent_index"] = c.convergent_index;
  j["q"] = conv ? conv->q.get_str() : std::string();
  j["epsilon_lower"] = c.epsilon_lower;
  j["threshold"] = c.threshold;
  j["retries"] = c.retries;
  j["precision"] = c.precision_digits;
  return j;
}

inline json failure(const CaseFailure& f) {
  return {{"b", f.b}, {"kind", to_string(f.kind)}, {"a", f.a}, {"gap", f.gap},
          {"convergent_index", f.convergent_index}, {"reason", f.reason}};
}

/// One base of a campaign. Step-2 cases are listed in full only with `detail`;
/// otherwise the worst case per digit a is given.
inline json campaign(const CampaignResult& r, bool detail) {
  json step1 = json::array();
  for (const auto& c : r.step1) step1.push_back(case_record(r, c));
  json step2 = json::array();
  if (detail) {
    for (const auto& c : r.step2) step2.push_back(case_record(r, c));
  } else {
    const CaseRecord* worst = nullptr;
    for (const auto& c : r.step2) {
      if (worst && worst->a != c.a) {
        step2.push_back(case_record(r, *worst));
        worst = nullptr;
      }
      if (!worst || c.threshold > worst->threshold) worst = &c;
    }
    if (worst) step2.push_back(case_record(r, *worst));
  }
  json failures = json::array();
  for (const auto& f : r.failures) failures.push_back(failure(f));
  return {
      {"b", r.b},
      {"M", r.M.get_str()},
      {"step1_m0_bound", r.step1_m0_bound},
      {"gap_bound", r.gap_bound},
      {"step2_bound", r.step2_bound},
      {"step1_cases", step1},
      {detail ? "step2_cases" : "step2_worst_per_a", step2},
      {"failures", failures},
  };
}

inline json summary(const CampaignSummary& s) {
  return {{"step1_m0_bound", s.step1_m0_bound}, {"gap_bound", s.gap_bound}, {"step2_bound", s.step2_bound},
          {"cases", s.cases},           {"retried_cases", s.retried_cases}, {"escalated_cases", s.escalated_cases},
          {"failures", s.failures}};
}

inline json table(const TableVerification& v) {
  return {{"expected", v.expected}, {"found", v.found},          {"matched", v.matched},
          {"missing", solutions(v.missing)}, {"extra", solutions(v.extra)}, {"invalid", solutions(v.invalid)}};
}

inline json verification(const VerificationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"table", table(r.table)}, {"checks", checks}, {"ok", r.ok()}};
}

/// RFC 4180 rows with columns n,m,l,a,b,value,trivial.
inline std::string solutions_csv(const std::vector<SolutionTuple>& list) {
  std::ostringstream out;
  out << "n,m,l,a,b,value,trivial\r\n";
  for (const auto& s : list) {
    out << s.n << ',' << s.m << ',' << s.ell << ',' << s.a << ',' << s.b << ',' << s.value.get_str() << ','
        << (s.trivial ? "true" : "false") << "\r\n";
  }
  return out.str();
}

}  // namespace narayana::report
