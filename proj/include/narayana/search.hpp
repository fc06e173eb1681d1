#pragma once

// Exhaustive search for N_n + N_m = a (b^l - 1)/(b - 1) below a reduced bound,
// the expected non-trivial solution table, and the single-term scans.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <compare>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "narayana/error.hpp"
#include "narayana/repdigit.hpp"
#include "narayana/sequence.hpp"

namespace narayana {

inline constexpr unsigned long kMinBase = 2;
inline constexpr unsigned long kMaxBase = 100;

struct BaseRange {
  unsigned long lo = kMinBase;
  unsigned long hi = kMaxBase;

  bool within_verified_scope() const { return lo >= kMinBase && hi <= kMaxBase; }
};

struct SolutionTuple {
  unsigned n = 0;
  unsigned m = 0;
  unsigned ell = 0;
  unsigned long a = 0;
  unsigned long b = 0;
  mpz_class value;
  bool trivial = false;  // l == 2

  auto key() const { return std::tie(n, m, b, a, ell); }
  friend bool operator==(const SolutionTuple& x, const SolutionTuple& y) { return x.key() == y.key(); }
  friend auto operator<=>(const SolutionTuple& x, const SolutionTuple& y) { return x.key() <=> y.key(); }
};

inline SolutionTuple make_solution(unsigned n, unsigned m, unsigned ell, unsigned long a, unsigned long b) {
  return {n, m, ell, a, b, repdigit_value(a, b, ell), ell == 2};
}

/// Exact re-check of N_n + N_m = a (b^l - 1)/(b - 1) and the tuple's side conditions.
inline bool revalidate(const SolutionTuple& s) {
  if (s.m > s.n || s.b < 2 || s.a < 1 || s.a > s.b - 1 || s.ell < 2) return false;
  const mpz_class lhs = narayana(s.n) + narayana(s.m);
  return lhs == repdigit_value(s.a, s.b, s.ell) && lhs == s.value;
}

namespace detail {

// b^(ell_min - 1) <= sum, necessary for a base-b repdigit of length >= ell_min.
// Monotone in b, so scans over increasing b can stop at the first failure.
inline bool base_can_reach(const mpz_class& sum, unsigned long b, unsigned ell_min) {
  mpz_class power = 1;
  for (unsigned k = 1; k < ell_min; ++k) {
    power *= b;
    if (power > sum) return false;
  }
  return true;
}

inline void scan_sum(const mpz_class& sum, unsigned n, unsigned m, BaseRange bases, unsigned ell_min, bool prune,
                     std::vector<SolutionTuple>& out) {
  for (unsigned long b = bases.lo; b <= bases.hi; ++b) {
    if (prune && !base_can_reach(sum, b, ell_min)) break;  // larger bases cannot reach ell_min either
    if (auto r = as_repdigit(sum, b); r && r->ell >= ell_min) {
      out.push_back({n, m, r->ell, r->a, b, sum, r->ell == 2});
    }
  }
}

inline std::vector<SolutionTuple> enumerate(unsigned n_max, BaseRange bases, unsigned ell_min, bool prune,
                                            unsigned jobs) {
  require(n_max >= 1, "n_max must be at least 1");
  require(bases.lo >= 2 && bases.lo <= bases.hi, "invalid base range");
  require(ell_min >= 2, "ell_min must be at least 2");
  const std::vector<mpz_class> terms = default_sequence().prefix(n_max);

  // Rows n are independent; each worker collects into its own slot and the
  // merge is followed by a canonical sort.
  std::vector<std::vector<SolutionTuple>> rows(n_max + 1);
  std::atomic<unsigned> next{0};
  auto worker = [&] {
    for (unsigned n = next++; n <= n_max; n = next++) {
      for (unsigned m = 0; m <= n; ++m) {
        scan_sum(terms[n] + terms[m], n, m, bases, ell_min, prune, rows[n]);
      }
    }
  };
  const unsigned threads = std::max(1u, std::min(jobs, n_max + 1));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < threads; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<SolutionTuple> out;
  for (auto& row : rows) out.insert(out.end(), row.begin(), row.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

/// All (n, m, l, a, b) with 0 <= m <= n <= n_max, b in `bases` and l >= ell_min,
/// sorted by (n, m, b, a, l).
inline std::vector<SolutionTuple> enumerate_solutions(unsigned n_max, BaseRange bases = {}, unsigned ell_min = 3,
                                                      unsigned jobs = 1) {
  return detail::enumerate(n_max, bases, ell_min, true, jobs);
}

/// Same result without skipping bases that are too large for the sum.
inline std::vector<SolutionTuple> enumerate_solutions_unpruned(unsigned n_max, BaseRange bases = {},
                                                               unsigned ell_min = 3) {
  return detail::enumerate(n_max, bases, ell_min, false, 1);
}

/// The 37 solutions with l >= 3, for 2 <= b <= 100, as (n, m, l, a, b).
inline constexpr std::array<std::array<unsigned, 5>, 37> kExpectedTable{{
    {6, 5, 3, 1, 2},    {7, 1, 3, 1, 2},    {7, 2, 3, 1, 2},    {7, 3, 3, 1, 2},    {8, 6, 3, 1, 3},
    {8, 7, 4, 1, 2},    {9, 0, 3, 1, 3},    {9, 4, 4, 1, 2},    {9, 9, 3, 2, 3},    {10, 4, 3, 1, 4},
    {11, 5, 5, 1, 2},   {11, 5, 3, 1, 5},   {12, 1, 3, 2, 4},   {12, 2, 3, 2, 4},   {12, 3, 3, 2, 4},
    {12, 4, 3, 1, 6},   {13, 4, 3, 2, 5},   {13, 5, 6, 1, 2},   {13, 5, 3, 3, 4},   {13, 9, 3, 1, 8},
    {14, 5, 3, 1, 9},   {14, 12, 3, 3, 6},  {15, 0, 3, 3, 6},   {15, 6, 3, 1, 11},  {15, 11, 3, 1, 12},
    {15, 12, 4, 2, 4},  {17, 14, 3, 5, 8},  {19, 7, 3, 1, 24},  {19, 10, 3, 2, 17}, {21, 5, 3, 7, 13},
    {21, 15, 3, 1, 37}, {21, 17, 5, 1, 6},  {21, 18, 3, 4, 20}, {26, 20, 3, 9, 32}, {26, 22, 3, 2, 72},
    {28, 13, 3, 20, 30}, {30, 18, 3, 11, 60},
}};

inline std::vector<SolutionTuple> expected_table() {
  std::vector<SolutionTuple> out;
  for (const auto& [n, m, ell, a, b] : kExpectedTable) out.push_back(make_solution(n, m, ell, a, b));
  std::sort(out.begin(), out.end());
  return out;
}

struct TableVerification {
  std::size_t expected = 0;
  std::size_t found = 0;
  std::size_t matched = 0;
  std::vector<SolutionTuple> missing;  // expected but not found
  std::vector<SolutionTuple> extra;    // found but not expected
  std::vector<SolutionTuple> invalid;  // expected rows failing exact re-validation

  bool ok() const { return missing.empty() && extra.empty() && invalid.empty(); }
};

/// Set comparison of a found solution list against an expected one.
inline TableVerification compare_tables(std::vector<SolutionTuple> found, std::vector<SolutionTuple> expected) {
  std::sort(found.begin(), found.end());
  std::sort(expected.begin(), expected.end());
  TableVerification v;
  v.expected = expected.size();
  v.found = found.size();
  std::set_difference(expected.begin(), expected.end(), found.begin(), found.end(), std::back_inserter(v.missing));
  std::set_difference(found.begin(), found.end(), expected.begin(), expected.end(), std::back_inserter(v.extra));
  v.matched = v.expected - v.missing.size();
  for (const auto& s : expected)
    if (!revalidate(s)) v.invalid.push_back(s);
  return v;
}

inline TableVerification verify_table1(unsigned jobs = 1) {
  return compare_tables(enumerate_solutions(280, {}, 3, jobs), expected_table());
}

/// N_n = a (b^l - 1)/(b - 1) for some l >= ell_min.
struct SingleTermRepdigit {
  unsigned n = 0;
  unsigned ell = 0;
  unsigned long a = 0;
  unsigned long b = 0;
  friend auto operator<=>(const SingleTermRepdigit&, const SingleTermRepdigit&) = default;
};

inline std::vector<SingleTermRepdigit> single_term_repdigits(unsigned n_max, BaseRange bases = {}, unsigned ell_min = 3) {
  require(ell_min >= 2, "ell_min must be at least 2");
  require(bases.lo >= 2 && bases.lo <= bases.hi, "invalid base range");
  std::vector<SingleTermRepdigit> out;
  for (unsigned n = 1; n <= n_max; ++n) {
    const mpz_class v = narayana(n);
    for (unsigned long b = bases.lo; b <= bases.hi; ++b) {
      if (!detail::base_can_reach(v, b, ell_min)) break;
      if (auto r = as_repdigit(v, b); r && r->ell >= ell_min) out.push_back({n, r->ell, r->a, b});
    }
  }
  return out;
}

/// Lucas-Lehmer test for 2^p - 1 (p = 2 handled directly).
inline bool mersenne_is_prime(unsigned p) {
  if (p < 2) return false;
  if (p == 2) return true;
  if (mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 30) == 0) return false;  // exact below 2^64
  const mpz_class mersenne = (mpz_class(1) << p) - 1;
  mpz_class s = 4;
  for (unsigned i = 0; i < p - 2; ++i) s = (s * s - 2) % mersenne;
  return s == 0;
}

struct MersenneHit {
  unsigned n = 0;
  unsigned ell = 0;  // N_n = 2^ell - 1
  mpz_class value;
  bool prime = false;
};

/// Indices n <= n_max with N_n = 2^l - 1 for some l >= ell_min.
inline std::vector<MersenneHit> mersenne_scan(unsigned n_max, unsigned ell_min = 3) {
  require(n_max >= 1, "n_max must be at least 1");
  std::vector<MersenneHit> out;
  for (unsigned n = 1; n <= n_max; ++n) {
    const mpz_class v = narayana(n);
    const mpz_class next = v + 1;
    if (mpz_popcount(next.get_mpz_t()) != 1) continue;
    const unsigned ell = static_cast<unsigned>(mpz_sizeinbase(next.get_mpz_t(), 2) - 1);
    if (ell < ell_min) continue;
    out.push_back({n, ell, v, mersenne_is_prime(ell)});
  }
  return out;
}

struct BlockHit {
  unsigned n = 0;
  mpz_class block;
  unsigned length = 0;
};

/// Indices n <= n_max with N_n an m-block repdigit of length >= min_length.
inline std::vector<BlockHit> block_repdigit_scan(unsigned n_max, unsigned m, unsigned min_length = 2) {
  require(m >= 1, "block size must be at least 1");
  require(min_length >= 2, "min_length must be at least 2");
  std::vector<BlockHit> out;
  const std::vector<mpz_class> terms = default_sequence().prefix(n_max);
  for (unsigned n = 1; n <= n_max; ++n) {
    if (auto r = as_block_repdigit(terms[n], m); r && r->length >= min_length) out.push_back({n, r->block, r->length});
  }
  return out;
}

// Verification suite ------------------------------------------------------------

struct VerificationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  TableVerification table;
  std::vector<VerificationCheck> checks;

  bool ok() const {
    return table.ok() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  }
};

inline std::string describe(const SolutionTuple& s) {
  return "(" + std::to_string(s.n) + "," + std::to_string(s.m) + "," + std::to_string(s.ell) + "," +
         std::to_string(s.a) + "," + std::to_string(s.b) + ")";
}

/// Table of solutions with l >= 3 plus every consequence drawn from it, all at n <= n_max.
inline VerificationReport run_verification(unsigned n_max = 280, unsigned jobs = 1) {
  VerificationReport report;
  const auto all = enumerate_solutions(n_max, {}, 3, jobs);
  report.table = compare_tables(all, expected_table());

  auto add = [&](std::string name, bool passed, std::string detail) {
    report.checks.push_back({std::move(name), passed, std::move(detail)});
  };

  {
    std::vector<SolutionTuple> four;
    for (const auto& s : all)
      if (s.ell >= 4) four.push_back(s);
    const std::vector<SolutionTuple> expected{make_solution(8, 7, 4, 1, 2),   make_solution(9, 4, 4, 1, 2),
                                              make_solution(11, 5, 5, 1, 2),  make_solution(13, 5, 6, 1, 2),
                                              make_solution(15, 12, 4, 2, 4), make_solution(21, 17, 5, 1, 6)};
    bool valid = std::all_of(four.begin(), four.end(), revalidate);
    add("l >= 4 identities", compare_tables(four, expected).ok() && valid, std::to_string(four.size()) + "/6");
  }
  {
    std::size_t seven = std::count_if(all.begin(), all.end(), [](const auto& s) { return s.ell >= 7; });
    add("no solutions with l >= 7", seven == 0, std::to_string(seven) + " found");
  }
  {
    auto single = single_term_repdigits(n_max, {}, 3);
    const std::vector<SingleTermRepdigit> expected{{9, 3, 1, 3}, {15, 3, 3, 6}};
    add("single-term repdigits with l >= 3", single == expected, std::to_string(single.size()) + " found");
  }
  {
    auto hits = mersenne_scan(n_max, 3);
    add("no N_n = 2^l - 1 with l >= 3", hits.empty(), std::to_string(hits.size()) + " found");
  }
  {
    auto base10 = single_term_repdigits(n_max, {10, 10}, 2);
    bool only88 = base10.size() == 1 && base10[0] == SingleTermRepdigit{14, 2, 8, 10};
    add("only base-10 repdigit is N_14 = 88", only88, std::to_string(base10.size()) + " found");
  }
  {
    auto one = block_repdigit_scan(n_max, 1, 2);
    bool ok = one.size() == 1 && one[0].n == 14 && one[0].length == 2;
    add("1-block repdigits: only N_14", ok, std::to_string(one.size()) + " found");
    auto three = block_repdigit_scan(n_max, 1, 3);
    add("no 1-block repdigits of length >= 3", three.empty(), std::to_string(three.size()) + " found");
  }
  {
    auto two = block_repdigit_scan(n_max, 2, 2);
    add("no 2-block repdigits", two.empty(), std::to_string(two.size()) + " found");
  }
  return report;
}

/// Block scans for m = m_lo..m_hi up to n_max. Beyond the proven range this is evidence only.
struct BlockEvidence {
  unsigned n_max = 0;
  unsigned m = 0;
  std::vector<BlockHit> hits;
};

inline std::vector<BlockEvidence> block_evidence(unsigned n_max, unsigned m_lo, unsigned m_hi) {
  std::vector<BlockEvidence> out;
  for (unsigned m = m_lo; m <= m_hi; ++m) out.push_back({n_max, m, block_repdigit_scan(n_max, m, 2)});
  return out;
}

}  // namespace narayana
