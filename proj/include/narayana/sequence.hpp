#pragma once

// Narayana's cows sequence N_0 = 0, N_1 = N_2 = 1, N_n = N_{n-1} + N_{n-3}.

#include <gmpxx.h>

#include <cstddef>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <vector>

#include "narayana/error.hpp"
#include "narayana/highprec.hpp"
#include "narayana/real_enclosure.hpp"

namespace narayana {

struct NarayanaValue {
  std::size_t index = 0;
  mpz_class value;
};

/// Append-only table of exact terms. Reads take a shared lock; growth is serialized.
class SequenceCache {
 public:
  SequenceCache() : terms_{0, 1, 1} {}

  mpz_class at(std::size_t n) {
    {
      std::shared_lock lock(mu_);
      if (n < terms_.size()) return terms_[n];
    }
    std::unique_lock lock(mu_);
    extend_locked(n);
    return terms_[n];
  }

  /// Copy of N_0 .. N_{n_max}.
  std::vector<mpz_class> prefix(std::size_t n_max) {
    at(n_max);
    std::shared_lock lock(mu_);
    return {terms_.begin(), terms_.begin() + static_cast<std::ptrdiff_t>(n_max + 1)};
  }

  std::size_t size() const {
    std::shared_lock lock(mu_);
    return terms_.size();
  }

 private:
  void extend_locked(std::size_t n) {
    while (terms_.size() <= n) {
      const std::size_t k = terms_.size();
      mpz_class next = terms_[k - 1] + terms_[k - 3];
      // Re-check the recurrence and monotonicity before publishing the term.
      if (next - terms_[k - 1] != terms_[k - 3] || (k >= 4 && next <= terms_[k - 1])) {
        throw Error(ErrorKind::Certification, "recurrence check failed at index " + std::to_string(k));
      }
      terms_.push_back(std::move(next));
    }
  }

  mutable std::shared_mutex mu_;
  std::deque<mpz_class> terms_;
};

inline SequenceCache& default_sequence() {
  static SequenceCache cache;
  return cache;
}

/// Exact N_n from the integer recurrence.
inline mpz_class narayana(std::size_t n) { return default_sequence().at(n); }

inline NarayanaValue narayana_value(std::size_t n) { return {n, narayana(n)}; }

/// C_alpha * alpha^(n+2), the dominant term of the Binet-like formula.
inline RealEnclosure binet_main_term(std::size_t n, const AlgebraicConstants& k) {
  return k.c_alpha * pow(k.alpha, static_cast<long>(n) + 2);
}

/// N_n recovered by rounding C_alpha * alpha^(n+2). Precision is raised (doubling)
/// until the rounding is certified or `max_digits` is exceeded.
inline mpz_class narayana_via_binet(std::size_t n, Precision p = Precision{}, int max_digits = 4000) {
  require(n >= 1, "Binet rounding requires n >= 1");
  for (Precision cur = p; cur.digits <= max_digits; cur = cur.scaled(2.0)) {
    RealEnclosure v = binet_main_term(n, constants(cur));
    // Nearest integer is certified when the whole enclosure rounds to the same integer.
    RealEnclosure shifted = v + RealEnclosure::from_rational(mpq_class(1, 2), cur);
    mpz_class lo = shifted.floor_lower();
    mpz_class hi;
    mpfr_get_z(hi.get_mpz_t(), shifted.upper_raw(), MPFR_RNDD);
    if (lo == hi && v.width() < 0.5) return lo;
  }
  throw Error(ErrorKind::PrecisionExhausted,
              "cannot certify Binet rounding for n = " + std::to_string(n) + " within " +
                  std::to_string(max_digits) + " digits");
}

struct GrowthWindow {
  RealEnclosure lower;  // alpha^(n-2)
  RealEnclosure upper;  // alpha^(n-1)
};

inline GrowthWindow growth_window(std::size_t n, const AlgebraicConstants& k = constants()) {
  require(n >= 1, "growth window requires n >= 1");
  const long e = static_cast<long>(n);
  return {pow(k.alpha, e - 2), pow(k.alpha, e - 1)};
}

enum class Certified { Holds, Fails, Undecided };

/// Certified truth value of lower <= value.
inline Certified certify_le(const RealEnclosure& lower, const mpz_class& value) {
  RealEnclosure v(value, lower.precision());
  if (certainly_less_equal(lower, v)) return Certified::Holds;
  if (certainly_less(v, lower)) return Certified::Fails;
  return Certified::Undecided;
}

/// Certified truth value of value <= upper.
inline Certified certify_le(const mpz_class& value, const RealEnclosure& upper) {
  RealEnclosure v(value, upper.precision());
  if (certainly_less_equal(v, upper)) return Certified::Holds;
  if (certainly_less(upper, v)) return Certified::Fails;
  return Certified::Undecided;
}

}  // namespace narayana
