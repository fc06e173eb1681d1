#include <gtest/gtest.h>

#include <cmath>

#include "narayana/real_enclosure.hpp"

using namespace narayana;

namespace {

const Precision p50{50};

RealEnclosure dec(const char* s, Precision p = p50) { return RealEnclosure::from_decimal(s, p); }

}  // namespace

TEST(RealEnclosure, IntegerIsExact) {
  RealEnclosure x(7L, p50);
  EXPECT_EQ(x.lower(), mpq_class(7));
  EXPECT_EQ(x.upper(), mpq_class(7));
  EXPECT_EQ(x.width(), 0.0);
}

TEST(RealEnclosure, DecimalLiteralIsEnclosed) {
  RealEnclosure x = dec("0.1");
  EXPECT_TRUE(x.contains(mpq_class(1, 10)));
  EXPECT_LT(x.width(), 1e-50);
}

TEST(RealEnclosure, RationalIsEnclosed) {
  RealEnclosure x = RealEnclosure::from_rational(mpq_class(1, 3), p50);
  EXPECT_TRUE(x.contains(mpq_class(1, 3)));
  EXPECT_LT(x.width(), 1e-50);
}

TEST(RealEnclosure, ArithmeticKeepsTruthInside) {
  RealEnclosure third = RealEnclosure::from_rational(mpq_class(1, 3), p50);
  RealEnclosure seventh = RealEnclosure::from_rational(mpq_class(-1, 7), p50);
  EXPECT_TRUE((third + seventh).contains(mpq_class(4, 21)));
  EXPECT_TRUE((third - seventh).contains(mpq_class(10, 21)));
  EXPECT_TRUE((third * seventh).contains(mpq_class(-1, 21)));
  EXPECT_TRUE((third / seventh).contains(mpq_class(-7, 3)));
  EXPECT_TRUE((seventh * seventh).contains(mpq_class(1, 49)));
}

TEST(RealEnclosure, MixedSignProduct) {
  RealEnclosure x = RealEnclosure::from_bounds(mpq_class(-1), mpq_class(2), p50);
  RealEnclosure y = RealEnclosure::from_bounds(mpq_class(-3), mpq_class(1), p50);
  RealEnclosure z = x * y;
  EXPECT_EQ(z.lower(), mpq_class(-6));
  EXPECT_EQ(z.upper(), mpq_class(3));
}

TEST(RealEnclosure, DivisionByZeroEnclosureThrows) {
  RealEnclosure zero = RealEnclosure::from_bounds(mpq_class(-1, 100), mpq_class(1, 100), p50);
  try {
    (void)(RealEnclosure(1L, p50) / zero);
    FAIL() << "expected a domain error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
  }
}

TEST(RealEnclosure, LogOfNonPositiveThrows) {
  try {
    (void)log(RealEnclosure(0L, p50));
    FAIL() << "expected a domain error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
  }
}

TEST(RealEnclosure, TranscendentalsAgainstDouble) {
  RealEnclosure two(2L, p50);
  EXPECT_NEAR(log(two).approx(), std::log(2.0), 1e-15);
  EXPECT_NEAR(exp(two).approx(), std::exp(2.0), 1e-13);
  EXPECT_NEAR(sqrt(two).approx(), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(pow(two, 10L).approx(), 1024.0, 0.0);
  EXPECT_NEAR(pow(two, -2L).approx(), 0.25, 0.0);
  EXPECT_NEAR(pow(two, RealEnclosure::from_rational(mpq_class(1, 2), p50)).approx(), std::sqrt(2.0), 1e-15);
}

TEST(RealEnclosure, ExpInvertsLog) {
  RealEnclosure x = dec("3.75");
  EXPECT_TRUE(exp(log(x)).contains(mpq_class(15, 4)));
}

TEST(RealEnclosure, WidthStaysNearPrecision) {
  RealEnclosure x = log(RealEnclosure(10L, Precision{200}));
  EXPECT_LT(x.relative_width(), 1e-195);
}

TEST(RealEnclosure, CertifiedComparisons) {
  RealEnclosure a = dec("1.5");
  RealEnclosure b = dec("1.6");
  EXPECT_TRUE(certainly_less(a, b));
  EXPECT_FALSE(certainly_less(b, a));
  RealEnclosure wide = RealEnclosure::from_bounds(mpq_class(1), mpq_class(2), p50);
  EXPECT_FALSE(certainly_less(a, wide));
  EXPECT_FALSE(certainly_less(wide, a));
}

TEST(RealEnclosure, HullAndContains) {
  RealEnclosure a(1L, p50), b(3L, p50);
  RealEnclosure h = RealEnclosure::hull(a, b);
  EXPECT_TRUE(h.contains(a));
  EXPECT_TRUE(h.contains(b));
  EXPECT_TRUE(h.contains(mpq_class(2)));
}

TEST(RealEnclosure, FloorAndCeil) {
  RealEnclosure x = dec("2.5");
  EXPECT_EQ(x.floor_lower(), 2);
  EXPECT_EQ(x.ceil_upper(), 3);
  EXPECT_EQ(RealEnclosure(4L, p50).ceil_upper(), 4);
}

TEST(RealEnclosure, AbsStraddlingZero) {
  RealEnclosure x = RealEnclosure::from_bounds(mpq_class(-2), mpq_class(1), p50);
  RealEnclosure y = abs(x);
  EXPECT_EQ(y.lower(), mpq_class(0));
  EXPECT_EQ(y.upper(), mpq_class(2));
}

TEST(RealEnclosure, LogOfBigInteger) {
  mpz_class big;
  mpz_ui_pow_ui(big.get_mpz_t(), 10, 100);
  EXPECT_NEAR(log_of(big, p50).approx(), 100 * std::log(10.0), 1e-12);
}

TEST(RealEnclosure, StringsRoundOutward) {
  RealEnclosure x = RealEnclosure::from_rational(mpq_class(2, 3), p50);
  EXPECT_EQ(x.lower_str(5), "6.6666e-01");
  EXPECT_EQ(x.upper_str(5), "6.6667e-01");
}

TEST(Precision, BitsAndScaling) {
  EXPECT_GE(Precision{200}.bits(), 665);
  EXPECT_EQ(Precision{200}.scaled(1.5).digits, 300);
  EXPECT_LT(Precision{30}, Precision{200});
}
