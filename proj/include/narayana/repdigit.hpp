#pragma once

// Base-b digit algebra: repdigits a(b^l - 1)/(b - 1) and m-block repdigits (repdigits in base 10^m).

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <vector>

#include "narayana/error.hpp"

namespace narayana {

struct RepdigitForm {
  unsigned long a = 0;
  unsigned long b = 0;
  unsigned ell = 0;
  mpz_class value;
};

/// Digit and length of a recognized repdigit.
struct RepdigitMatch {
  unsigned long a = 0;
  unsigned ell = 0;
  friend bool operator==(const RepdigitMatch&, const RepdigitMatch&) = default;
};

struct BlockForm {
  unsigned block_size = 0;
  unsigned length = 0;
  mpz_class value;
};

struct BlockMatch {
  mpz_class block;
  unsigned length = 0;
  friend bool operator==(const BlockMatch& x, const BlockMatch& y) { return x.block == y.block && x.length == y.length; }
};

/// Base-b digits of a positive integer, most significant first.
inline std::vector<unsigned long> to_base_digits(const mpz_class& value, unsigned long b) {
  require(value >= 1, "to_base_digits needs a positive value");
  require(b >= 2, "base must be at least 2");
  std::vector<unsigned long> digits;
  mpz_class rest = value;
  while (rest != 0) digits.push_back(mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), b));
  std::reverse(digits.begin(), digits.end());
  return digits;
}

/// (a, l) when value > b and every base-b digit of value equals a.
inline std::optional<RepdigitMatch> as_repdigit(const mpz_class& value, unsigned long b) {
  require(b >= 2, "base must be at least 2");
  if (value <= b) return std::nullopt;
  mpz_class rest = value;
  const unsigned long a = mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), b);
  if (a == 0) return std::nullopt;
  unsigned ell = 1;
  while (rest != 0) {
    if (mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), b) != a) return std::nullopt;
    ++ell;
  }
  return RepdigitMatch{a, ell};
}

/// a (b^l - 1) / (b - 1), exactly.
inline mpz_class repdigit_value(unsigned long a, unsigned long b, unsigned ell) {
  require(b >= 2, "base must be at least 2");
  require(ell >= 1, "length must be at least 1");
  if (a < 1 || a > b - 1) {
    throw Error(ErrorKind::DigitOutOfRange,
                "digit " + std::to_string(a) + " not in [1, " + std::to_string(b - 1) + "]");
  }
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), b, ell);
  mpz_class out = (power - 1) / (b - 1);
  return out * a;
}

inline RepdigitForm make_repdigit(unsigned long a, unsigned long b, unsigned ell) {
  return {a, b, ell, repdigit_value(a, b, ell)};
}

/// (block, length) when value is a repdigit in base 10^m.
inline std::optional<BlockMatch> as_block_repdigit(const mpz_class& value, unsigned m) {
  require(m >= 1, "block size must be at least 1");
  mpz_class base;
  mpz_ui_pow_ui(base.get_mpz_t(), 10, m);
  if (value <= base) return std::nullopt;
  mpz_class rest = value;
  mpz_class block;
  mpz_class digit;
  mpz_fdiv_qr(rest.get_mpz_t(), block.get_mpz_t(), rest.get_mpz_t(), base.get_mpz_t());
  if (block == 0) return std::nullopt;
  unsigned length = 1;
  while (rest != 0) {
    mpz_fdiv_qr(rest.get_mpz_t(), digit.get_mpz_t(), rest.get_mpz_t(), base.get_mpz_t());
    if (digit != block) return std::nullopt;
    ++length;
  }
  return BlockMatch{block, length};
}

}  // namespace narayana
