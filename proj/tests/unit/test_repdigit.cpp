#include <gtest/gtest.h>

#include "narayana/repdigit.hpp"

using namespace narayana;

using Digits = std::vector<unsigned long>;

TEST(BaseDigits, Examples) {
  EXPECT_EQ(to_base_digits(15, 2), (Digits{1, 1, 1, 1}));
  EXPECT_EQ(to_base_digits(399, 20), (Digits{19, 19}));
  EXPECT_EQ(to_base_digits(1, 10), (Digits{1}));
  EXPECT_EQ(to_base_digits(170, 4), (Digits{2, 2, 2, 2}));
}

TEST(BaseDigits, ReconstructionOfRandomValues) {
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(20240611);
  mpz_class limit;
  mpz_ui_pow_ui(limit.get_mpz_t(), 10, 50);
  for (int i = 0; i < 2000; ++i) {
    mpz_class v = rng.get_z_range(limit) + 1;
    const unsigned long b = 2 + static_cast<unsigned long>(i % 99);
    const Digits d = to_base_digits(v, b);
    ASSERT_FALSE(d.empty());
    ASSERT_NE(d.front(), 0u);
    mpz_class back = 0;
    for (unsigned long digit : d) {
      ASSERT_LT(digit, b);
      back = back * b + digit;
    }
    ASSERT_EQ(back, v);
  }
}

TEST(Repdigit, Recognition) {
  EXPECT_EQ(as_repdigit(88, 10), (RepdigitMatch{8, 2}));
  EXPECT_FALSE(as_repdigit(399, 10).has_value());
  EXPECT_EQ(as_repdigit(170, 4), (RepdigitMatch{2, 4}));
  EXPECT_EQ(as_repdigit(399, 20), (RepdigitMatch{19, 2}));
}

TEST(Repdigit, SingleDigitsAreNotRepdigits) {
  EXPECT_FALSE(as_repdigit(5, 10).has_value());
  EXPECT_FALSE(as_repdigit(10, 10).has_value());
  EXPECT_FALSE(as_repdigit(2, 2).has_value());
  EXPECT_TRUE(as_repdigit(3, 2).has_value());
}

TEST(Repdigit, Values) {
  EXPECT_EQ(repdigit_value(3, 6, 3), 129);
  EXPECT_EQ(repdigit_value(1, 6, 5), 1555);
  EXPECT_EQ(repdigit_value(5, 10, 1), 5);
  EXPECT_EQ(repdigit_value(2, 72, 3), 10514);
}

TEST(Repdigit, DigitOutOfRange) {
  EXPECT_THROW((void)repdigit_value(1, 1, 3), Error);
  for (auto [a, b] : {std::pair{0ul, 10ul}, std::pair{10ul, 10ul}, std::pair{3ul, 2ul}}) {
    try {
      (void)repdigit_value(a, b, 3);
      FAIL() << a << ' ' << b;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::DigitOutOfRange);
    }
  }
}

TEST(Repdigit, RoundTrip) {
  for (unsigned long b = 2; b <= 100; ++b) {
    for (unsigned long a = 1; a < b; ++a) {
      for (unsigned ell = 2; ell <= 10; ++ell) {
        ASSERT_EQ(as_repdigit(repdigit_value(a, b, ell), b), (RepdigitMatch{a, ell})) << a << ' ' << b << ' ' << ell;
      }
    }
  }
}

TEST(Repdigit, MakeRepdigit) {
  RepdigitForm f = make_repdigit(8, 10, 2);
  EXPECT_EQ(f.value, 88);
  EXPECT_EQ(f.ell, 2u);
}

TEST(BlockRepdigit, Examples) {
  EXPECT_EQ(as_block_repdigit(88, 1), (BlockMatch{8, 2}));
  EXPECT_EQ(as_block_repdigit(2626, 2), (BlockMatch{26, 2}));
  EXPECT_FALSE(as_block_repdigit(129, 1).has_value());
  // Inner blocks with a leading zero: 50505 = [5][05][05] is not uniform, 50505 in base 100 is 5,5,5.
  EXPECT_EQ(as_block_repdigit(50505, 2), (BlockMatch{5, 3}));
}

TEST(BlockRepdigit, AgreesWithBaseTenPowers) {
  for (unsigned m = 1; m <= 3; ++m) {
    unsigned long base = 1;
    for (unsigned i = 0; i < m; ++i) base *= 10;
    for (unsigned long v = 1; v <= 1000000; ++v) {
      const mpz_class value(v);
      auto block = as_block_repdigit(value, m);
      auto plain = as_repdigit(value, base);
      ASSERT_EQ(block.has_value(), plain.has_value()) << v << " m=" << m;
      if (block) {
        ASSERT_EQ(block->block, plain->a);
        ASSERT_EQ(block->length, plain->ell);
      }
    }
  }
}
