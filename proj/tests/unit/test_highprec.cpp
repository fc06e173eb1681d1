#include <gtest/gtest.h>

#include "narayana/highprec.hpp"

using namespace narayana;

namespace {

// Reference digits from an independent mpmath evaluation (tests/oracles/derive_values.py).
const char* const kAlpha = "1.465571231876768026656731225219939108026";
const char* const kLogAlpha = "0.3822450858400356413293584991848573937594";
const char* const kInvCAlpha = "5.147899035704787354026214964930987364917";
const char* const kBetaAbs = "0.8260313576541869559689870019977213276719";

// True value within 10^-39 of the reference, and the enclosure is that tight or tighter.
void expect_matches(const RealEnclosure& x, const char* reference) {
  const Precision p{60};
  RealEnclosure ref = RealEnclosure::from_decimal(reference, p);
  RealEnclosure tol = RealEnclosure::from_decimal("1e-39", p);
  EXPECT_TRUE(certainly_less(ref - tol, x)) << x.str(45);
  EXPECT_TRUE(certainly_less(x, ref + tol)) << x.str(45);
}

}  // namespace

TEST(Constants, MatchOracle) {
  const auto& k = constants();
  expect_matches(k.alpha, kAlpha);
  expect_matches(k.log_alpha, kLogAlpha);
  expect_matches(1L / k.c_alpha, kInvCAlpha);
  expect_matches(k.beta_abs, kBetaAbs);
}

TEST(Constants, PublishedDigitsAtThirtyDigits) {
  const auto& k = constants(Precision{30});
  EXPECT_EQ(k.alpha.lower_str(6), "1.46557e+00");
  EXPECT_EQ((1L / k.c_alpha).lower_str(5), "5.1478e+00");
  EXPECT_TRUE((pow(k.alpha, 3) - pow(k.alpha, 2) - 1L).contains_zero());
}

TEST(Constants, CertifiedRanges) {
  const auto& k = constants();
  const Precision p = k.precision;
  EXPECT_TRUE(certainly_less(RealEnclosure::from_decimal("1.45", p), k.alpha));
  EXPECT_TRUE(certainly_less(k.alpha, RealEnclosure::from_decimal("1.5", p)));
  const RealEnclosure inv = 1L / k.c_alpha;
  EXPECT_TRUE(certainly_less(RealEnclosure(5L, p), inv));
  EXPECT_TRUE(certainly_less(inv, RealEnclosure::from_decimal("5.15", p)));
  EXPECT_TRUE(certainly_less(k.beta_abs, RealEnclosure(1L, p)));
  EXPECT_LT(k.alpha.width(), 1e-195);
}

TEST(Constants, ThirtyAndTwoHundredDigitsAgree) {
  const auto& lo = constants(Precision{30});
  const auto& hi = constants(Precision{200});
  EXPECT_TRUE(lo.alpha.contains(hi.alpha));
  EXPECT_TRUE(lo.log_alpha.contains(hi.log_alpha));
  EXPECT_TRUE(lo.c_alpha.contains(hi.c_alpha));
  EXPECT_TRUE(lo.beta_abs.contains(hi.beta_abs));
}

TEST(Constants, RejectsLowPrecision) { EXPECT_THROW(compute_constants(Precision{10}), Error); }

TEST(Constants, CacheReturnsStableReference) {
  const auto* first = &constants(Precision{77});
  const auto* second = &constants(Precision{77});
  EXPECT_EQ(first, second);
}

TEST(LogEnclosure, Values) {
  const Precision p{50};
  EXPECT_TRUE(log_enclosure(mpz_class(1), p).contains(mpq_class(0)));
  EXPECT_NEAR(log_enclosure(mpz_class(2), p).approx(), 0.6931471805599453, 1e-16);
  const auto& k = constants(p);
  RealEnclosure la = log_enclosure(k.alpha);
  EXPECT_EQ(la.lower_str(5), "3.8224e-01");
  // Exponentiating recovers alpha.
  EXPECT_FALSE(certainly_less(exp(la), k.alpha));
  EXPECT_FALSE(certainly_less(k.alpha, exp(la)));
}

TEST(LogEnclosure, RejectsNonPositive) {
  try {
    (void)log_enclosure(RealEnclosure(-1L, Precision{50}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
  }
  EXPECT_THROW((void)log_enclosure(mpz_class(0), Precision{50}), Error);
}

TEST(Convergents, RationalSevenThirds) {
  auto cs = continued_fraction_convergents(RealEnclosure::from_rational(mpq_class(7, 3), Precision{50}), 1);
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_EQ(cs[0].p, 2);
  EXPECT_EQ(cs[0].q, 1);
  EXPECT_EQ(cs[1].p, 7);
  EXPECT_EQ(cs[1].q, 3);
}

TEST(Convergents, GoldenRatioPrefix) {
  const Precision p{60};
  RealEnclosure phi = (1L + sqrt(RealEnclosure(5L, p))) / 2L;
  auto cs = continued_fraction_convergents(phi, 10);
  const long expected[][2] = {{1, 1}, {2, 1}, {3, 2}, {5, 3}, {8, 5}, {13, 8}};
  ASSERT_GE(cs.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(cs[i].p, expected[i][0]) << i;
    EXPECT_EQ(cs[i].q, expected[i][1]) << i;
  }
  // 21/13 is the first with q > 10, followed by ten more.
  EXPECT_EQ(cs.size(), 17u);
  EXPECT_EQ(cs[6].q, 13);
}

TEST(Convergents, LogTwoOverLogAlpha) {
  const auto& k = constants();
  RealEnclosure x = log_of(2, k.precision) / k.log_alpha;
  auto cs = continued_fraction_convergents(x, 1000000);
  auto it = std::find_if(cs.begin(), cs.end(), [](const Convergent& c) { return c.q > 1000000; });
  ASSERT_NE(it, cs.end());
  EXPECT_EQ(it->p, 9524467);
  EXPECT_EQ(it->q, 5252392);
}

TEST(Convergents, DeterminantAndApproximationProperties) {
  const auto& k = constants();
  for (unsigned long b : {2ul, 3ul, 10ul, 57ul, 100ul}) {
    RealEnclosure x = log_of(b, k.precision) / k.log_alpha;
    mpz_class q_min;
    mpz_ui_pow_ui(q_min.get_mpz_t(), 10, 40);
    auto cs = continued_fraction_convergents(x, q_min);
    for (std::size_t i = 1; i < cs.size(); ++i) {
      mpz_class det = cs[i].p * cs[i - 1].q - cs[i - 1].p * cs[i].q;
      EXPECT_TRUE(det == 1 || det == -1) << "b=" << b << " i=" << i;
      // q_0 = q_1 = 1 when the first partial quotient after the integer part is 1.
      if (i >= 2) EXPECT_GT(cs[i].q, cs[i - 1].q);
      EXPECT_GE(cs[i].q, cs[i - 1].q);
      EXPECT_EQ(cs[i].index, i);
      EXPECT_EQ(gcd(cs[i].p, cs[i].q), 1);
    }
    for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
      RealEnclosure approx = RealEnclosure::from_rational(mpq_class(cs[i].p, cs[i].q), k.precision);
      RealEnclosure bound = RealEnclosure::from_rational(mpq_class(1, cs[i].q * cs[i + 1].q), k.precision);
      EXPECT_TRUE(certainly_less(abs(x - approx), bound)) << "b=" << b << " i=" << i;
    }
  }
}

TEST(Convergents, LowPrecisionExhausts) {
  const auto& k = constants(Precision{30});
  RealEnclosure x = log_of(3, k.precision) / k.log_alpha;
  mpz_class q_min;
  mpz_ui_pow_ui(q_min.get_mpz_t(), 10, 40);
  try {
    (void)continued_fraction_convergents(x, q_min);
    FAIL() << "expected precision exhaustion";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PrecisionExhausted);
  }
}

TEST(Convergents, CollapsedRationalDetected) {
  EXPECT_TRUE(collapsed_rational(RealEnclosure::from_rational(mpq_class(22, 7), Precision{50})).has_value());
  const auto& k = constants();
  EXPECT_FALSE(collapsed_rational(log_of(2, k.precision) / k.log_alpha).has_value());
}

TEST(NearestInt, Examples) {
  const Precision p{50};
  EXPECT_TRUE(nearest_int_distance(RealEnclosure::from_decimal("2.4", p)).contains(mpq_class(2, 5)));
  EXPECT_TRUE(nearest_int_distance(RealEnclosure::from_decimal("-0.3", p)).contains(mpq_class(3, 10)));
  RealEnclosure zero = nearest_int_distance(RealEnclosure(5L, p));
  EXPECT_EQ(zero.lower(), mpq_class(0));
  EXPECT_EQ(zero.upper(), mpq_class(0));
}

TEST(NearestInt, AmbiguousAndWide) {
  const Precision p{50};
  RealEnclosure half = RealEnclosure::from_bounds(mpq_class(49, 100), mpq_class(51, 100), p);
  try {
    (void)nearest_int_distance(half);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Ambiguity);
  }
  RealEnclosure wide = RealEnclosure::from_bounds(mpq_class(0), mpq_class(1, 2), p);
  EXPECT_THROW((void)nearest_int_distance(wide), Error);
}
