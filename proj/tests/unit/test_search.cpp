#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <set>
#include <tuple>

#include "narayana/search.hpp"

using namespace narayana;

namespace {
// The term function shares its name with the namespace.
mpz_class N(std::size_t n) { return narayana::narayana(n); }

using Key = std::tuple<unsigned, unsigned, unsigned, unsigned long, unsigned long>;  // n, m, l, a, b

std::set<Key> keys(const std::vector<SolutionTuple>& list) {
  std::set<Key> out;
  for (const auto& s : list) out.insert({s.n, s.m, s.ell, s.a, s.b});
  return out;
}

// Second implementation on boost::multiprecision with digit strings; shares nothing with the library.
std::set<Key> brute_force(unsigned n_max, unsigned ell_min) {
  using boost::multiprecision::cpp_int;
  std::vector<cpp_int> t{0, 1, 1};
  while (t.size() <= n_max) t.push_back(t[t.size() - 1] + t[t.size() - 3]);
  std::set<Key> out;
  for (unsigned n = 0; n <= n_max; ++n) {
    for (unsigned m = 0; m <= n; ++m) {
      const cpp_int s = t[n] + t[m];
      for (unsigned long b = 2; b <= 100; ++b) {
        if (s <= b) continue;
        std::string digits;
        cpp_int v = s;
        while (v > 0) {
          digits.push_back(static_cast<char>(static_cast<unsigned long>(v % b)));
          v /= b;
        }
        if (digits.size() < ell_min) continue;
        if (digits.find_first_not_of(digits[0]) != std::string::npos) continue;
        out.insert({n, m, static_cast<unsigned>(digits.size()), static_cast<unsigned char>(digits[0]), b});
      }
    }
  }
  return out;
}

}  // namespace

TEST(Search, TableReproduction) {
  auto found = enumerate_solutions(280);
  EXPECT_EQ(found.size(), 37u);
  auto v = compare_tables(found, expected_table());
  EXPECT_TRUE(v.ok());
  EXPECT_EQ(v.matched, 37u);
}

TEST(Search, ExpectedRowsRevalidate) {
  auto table = expected_table();
  ASSERT_EQ(table.size(), 37u);
  for (const auto& t : table) {
    EXPECT_TRUE(revalidate(t)) << describe(t);
    EXPECT_FALSE(t.trivial);
  }
  // N_26 + N_22 = 2 (72^3 - 1) / 71
  EXPECT_EQ(N(26) + N(22), repdigit_value(2, 72, 3));
}

TEST(Search, LengthFourIdentities) {
  auto four = enumerate_solutions(280, {}, 4);
  std::vector<SolutionTuple> expected{make_solution(8, 7, 4, 1, 2),   make_solution(9, 4, 4, 1, 2),
                                      make_solution(11, 5, 5, 1, 2),  make_solution(13, 5, 6, 1, 2),
                                      make_solution(15, 12, 4, 2, 4), make_solution(21, 17, 5, 1, 6)};
  EXPECT_EQ(four, expected);
  for (const auto& t : four) EXPECT_TRUE(revalidate(t));
  EXPECT_EQ(N(8) + N(7), 15);
  EXPECT_EQ(N(21) + N(17), 1555);
}

TEST(Search, NothingFromLengthSeven) { EXPECT_TRUE(enumerate_solutions(280, {}, 7).empty()); }

TEST(Search, OrderedAndUnique) {
  auto all = enumerate_solutions(120, {}, 2);
  for (std::size_t i = 1; i < all.size(); ++i) ASSERT_LT(all[i - 1], all[i]);
  for (const auto& t : all) ASSERT_TRUE(revalidate(t)) << describe(t);
}

TEST(Search, SameSumMultipleTuples) {
  auto found = enumerate_solutions(280);
  EXPECT_NE(std::find(found.begin(), found.end(), make_solution(11, 5, 5, 1, 2)), found.end());
  EXPECT_NE(std::find(found.begin(), found.end(), make_solution(11, 5, 3, 1, 5)), found.end());
}

TEST(Search, PrunedEqualsUnpruned) {
  for (unsigned ell_min : {2u, 3u, 5u}) {
    EXPECT_EQ(enumerate_solutions(60, {}, ell_min), enumerate_solutions_unpruned(60, {}, ell_min)) << ell_min;
  }
}

TEST(Search, JobsDoNotChangeResult) {
  EXPECT_EQ(enumerate_solutions(150, {}, 2, 1), enumerate_solutions(150, {}, 2, 4));
}

TEST(Search, OracleEquivalence) {
  for (unsigned ell_min : {2u, 3u}) {
    EXPECT_EQ(keys(enumerate_solutions(100, {}, ell_min)), brute_force(100, ell_min)) << ell_min;
  }
}

TEST(Search, Preconditions) {
  EXPECT_THROW((void)enumerate_solutions(0), Error);
  EXPECT_THROW((void)enumerate_solutions(10, {1, 5}), Error);
  EXPECT_THROW((void)enumerate_solutions(10, {}, 1), Error);
}

TEST(Search, PerturbedTableReportsBothSides) {
  auto expected = expected_table();
  expected[10] = make_solution(30, 1, 3, 1, 2);  // not a solution
  auto v = compare_tables(enumerate_solutions(280), expected);
  EXPECT_FALSE(v.ok());
  EXPECT_EQ(v.missing.size(), 1u);
  EXPECT_EQ(v.extra.size(), 1u);
  EXPECT_EQ(v.matched, 36u);
  EXPECT_EQ(v.extra.front(), expected_table()[10]);
}

TEST(Search, InvalidExpectedRowIsFlagged) {
  auto expected = expected_table();
  expected[0].value += 1;
  auto v = compare_tables(enumerate_solutions(280), expected);
  EXPECT_FALSE(v.ok());
  EXPECT_EQ(v.invalid.size(), 1u);
}

TEST(Corollaries, SingleTerm) {
  auto single = single_term_repdigits(280);
  ASSERT_EQ(single.size(), 2u);
  EXPECT_EQ(single[0].n, 9u);
  EXPECT_EQ(single[0].ell, 3u);
  EXPECT_EQ(single[0].a, 1u);
  EXPECT_EQ(single[0].b, 3u);
  EXPECT_EQ(single[1].n, 15u);
  EXPECT_EQ(single[1].a, 3u);
  EXPECT_EQ(single[1].b, 6u);
  EXPECT_EQ(N(9), repdigit_value(1, 3, 3));
  EXPECT_EQ(N(15), repdigit_value(3, 6, 3));

  auto ten = single_term_repdigits(280, {10, 10}, 2);
  bool has88 = std::any_of(ten.begin(), ten.end(), [](const auto& s) { return s.n == 14 && s.a == 8 && s.ell == 2; });
  EXPECT_TRUE(has88);
  EXPECT_TRUE(single_term_repdigits(8).empty());
}

TEST(Corollaries, Mersenne) {
  EXPECT_TRUE(mersenne_scan(280, 3).empty());
  auto two = mersenne_scan(280, 2);
  auto it = std::find_if(two.begin(), two.end(), [](const auto& h) { return h.n == 5; });
  ASSERT_NE(it, two.end());
  EXPECT_EQ(it->ell, 2u);
  EXPECT_TRUE(it->prime);
  for (const auto& h : mersenne_scan(4, 2)) EXPECT_LE(h.value, 2);
}

TEST(Corollaries, LucasLehmer) {
  std::vector<unsigned> primes;
  for (unsigned p = 2; p <= 130; ++p)
    if (mersenne_is_prime(p)) primes.push_back(p);
  EXPECT_EQ(primes, (std::vector<unsigned>{2, 3, 5, 7, 13, 17, 19, 31, 61, 89, 107, 127}));
}

TEST(Corollaries, Blocks) {
  auto one = block_repdigit_scan(280, 1, 2);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].n, 14u);
  EXPECT_EQ(one[0].block, 8);
  EXPECT_TRUE(block_repdigit_scan(280, 2, 2).empty());
  EXPECT_TRUE(block_repdigit_scan(280, 1, 3).empty());
}

TEST(Corollaries, VerificationReport) {
  auto r = run_verification();
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.table.matched, 37u);
  for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

TEST(Corollaries, BlockEvidenceSmall) {
  auto ev = block_evidence(1000, 2, 3);
  ASSERT_EQ(ev.size(), 2u);
  for (const auto& e : ev) EXPECT_TRUE(e.hits.empty()) << e.m;
}
