#pragma once

// Logarithmic heights, Matveev's lower bound for linear forms in logarithms,
// and the chain of estimates that bounds n by M_b = 6.5e31 log^5 b.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "narayana/error.hpp"
#include "narayana/highprec.hpp"
#include "narayana/real_enclosure.hpp"

namespace narayana {

/// Rounded constants used by the bound chain, as decimal literals.
namespace coefficients {
inline constexpr const char* kLambda1 = "2e13";       // Matveev prefactor for the first linear form
inline constexpr const char* kGap = "1e14";           // (n - m) log alpha < kGap log n log^2 b
inline constexpr const char* kLambda2A3 = "1.1e14";   // A_3 = kLambda2A3 log n log^2 b
inline constexpr const char* kLambda2 = "7.3e26";     // n log alpha - log 5 < kLambda2 log^2 n log^3 b
inline constexpr const char* kStep2 = "2e27";         // n / log^2 n < kStep2 log^3 b
inline constexpr const char* kFinal = "6.5e31";       // n < kFinal log^5 b
}  // namespace coefficients

/// Smallest n with 1 + log(n + 2) <= 2 log n (checked numerically in the tests).
inline constexpr unsigned long kLogShiftThreshold = 5;

struct MatveevParams {
  unsigned t = 1;
  unsigned D = 1;
  mpz_class B = 1;
  std::vector<RealEnclosure> A;
};

/// h(p/q) = log max(|p|, q) for a reduced fraction.
inline RealEnclosure log_height_rational(const mpz_class& p, const mpz_class& q, Precision prec = Precision{}) {
  require(q > 0, "denominator must be positive");
  if (gcd(p, q) != 1) {
    throw Error(ErrorKind::NonReducedFraction, p.get_str() + "/" + q.get_str());
  }
  mpz_class m = abs(p) > q ? mpz_class(abs(p)) : q;
  return log_of(m, prec);
}

/// h(C_alpha) = (log 31) / 3, after certifying that the C_alpha enclosure is a
/// root of 31x^3 - 31x^2 + 10x - 1 and that the other roots have modulus below 1.
inline RealEnclosure height_c_alpha(const AlgebraicConstants& k = constants()) {
  const RealEnclosure& c = k.c_alpha;
  RealEnclosure poly = 31L * pow(c, 3) - 31L * pow(c, 2) + 10L * c - 1L;
  if (!poly.contains_zero()) {
    throw Error(ErrorKind::Certification, "C_alpha does not annihilate 31x^3 - 31x^2 + 10x - 1: " + poly.str(8));
  }
  // The product of the roots is 1/31, so the conjugates have modulus (31 C_alpha)^(-1/2).
  RealEnclosure conjugate_modulus = sqrt(1L / (31L * c));
  if (!certainly_less(conjugate_modulus, RealEnclosure(1L, k.precision))) {
    throw Error(ErrorKind::Certification, "conjugates of C_alpha not inside the unit circle");
  }
  return log_of(31, k.precision) / 3L;
}

/// E such that |Lambda| > exp(-E):
/// E = 1.4 * 30^(t+3) * t^4.5 * D^2 * (1 + log D) * (1 + log B) * A_1 ... A_t.
inline RealEnclosure matveev_log_lower_bound(const MatveevParams& params, Precision prec = Precision{}) {
  require(params.t >= 1, "Matveev: t must be at least 1");
  require(params.D >= 1, "Matveev: D must be at least 1");
  require(params.B >= 1, "Matveev: B must be at least 1");
  require(params.A.size() == params.t, "Matveev: need exactly t height parameters");
  const RealEnclosure floor_016 = RealEnclosure::from_decimal("0.16", prec);
  for (const auto& a : params.A) {
    require(!certainly_less(a, floor_016), "Matveev: every A_i must be at least 0.16");
  }
  const long t = params.t;
  const long d = params.D;
  RealEnclosure e = RealEnclosure::from_decimal("1.4", prec);
  e *= pow(RealEnclosure(30L, prec), t + 3);
  e *= pow(RealEnclosure(t, prec), 4) * sqrt(RealEnclosure(t, prec));
  e *= RealEnclosure(d * d, prec);
  e *= 1L + log_of(d, prec);
  e *= 1L + log_of(params.B, prec);
  for (const auto& a : params.A) e *= a;
  return e;
}

/// The three-logarithm application to the first linear form, with B = n + 2.
inline MatveevParams lambda1_params(unsigned long b, const mpz_class& n, const AlgebraicConstants& k) {
  const RealEnclosure log_b = log_of(b, k.precision);
  return {3, 3, n + 2, {k.log_alpha, 3L * log_b, 6L * log_b}};
}

/// Matveev exponent for the first linear form divided by (1 + log(n+2)) log^2 b;
/// independent of n and b, about 1.86e13.
inline RealEnclosure lambda1_prefactor(const AlgebraicConstants& k = constants()) {
  const mpz_class n = 100;
  const unsigned long b = 2;
  RealEnclosure e = matveev_log_lower_bound(lambda1_params(b, n, k), k.precision);
  const RealEnclosure log_b = log_of(b, k.precision);
  return e / ((1L + log_of(n + 2, k.precision)) * log_b * log_b);
}

/// Matveev exponent for the second linear form (A_3 = 1.1e14 log n log^2 b)
/// divided by (1 + log(n+2)) log n log^3 b; about 3.41e26.
inline RealEnclosure lambda2_prefactor(const AlgebraicConstants& k = constants()) {
  const Precision p = k.precision;
  const mpz_class n = 100;
  const unsigned long b = 2;
  const RealEnclosure log_b = log_of(b, p);
  const RealEnclosure log_n = log_of(n, p);
  RealEnclosure a3 = RealEnclosure::from_decimal(coefficients::kLambda2A3, p) * log_n * log_b * log_b;
  MatveevParams params{3, 3, n + 2, {k.log_alpha, 3L * log_b, a3}};
  RealEnclosure e = matveev_log_lower_bound(params, p);
  return e / ((1L + log_of(n + 2, p)) * log_n * pow(log_b, 3));
}

/// Upper bound on n - m: 1e14 log n log^2 b / log alpha. Verifies on the way
/// that the exact Matveev exponent is dominated by the rounded coefficients.
inline RealEnclosure lambda1_gap_bound(unsigned long b, const mpz_class& n, const AlgebraicConstants& k = constants()) {
  require(b >= 2, "base must be at least 2");
  require(n >= kLogShiftThreshold, "gap bound needs n >= 5");
  const Precision p = k.precision;
  const RealEnclosure log_b = log_of(b, p);
  const RealEnclosure log_n = log_of(n, p);
  const RealEnclosure log2_b = log_b * log_b;

  RealEnclosure exact = matveev_log_lower_bound(lambda1_params(b, n, k), p);
  RealEnclosure rounded = RealEnclosure::from_decimal(coefficients::kLambda1, p) * (1L + log_of(n + 2, p)) * log2_b;
  RealEnclosure rhs = RealEnclosure::from_decimal(coefficients::kGap, p) * log_n * log2_b;
  if (!certainly_less_equal(exact, rounded) || !certainly_less(log_of(6, p) + rounded, rhs)) {
    throw Error(ErrorKind::Certification, "rounded Matveev coefficient fails to dominate at b = " +
                                              std::to_string(b) + ", n = " + n.get_str());
  }
  return rhs / k.log_alpha;
}

/// 4 T log^2 T: any x with x / log^2 x < T satisfies x < 4 T log^2 T.
inline RealEnclosure guzman_luca(const RealEnclosure& T) {
  require(certainly_less(RealEnclosure(256L, T.precision()), T), "T must exceed 16^2");
  RealEnclosure lt = log(T);
  return 4L * T * lt * lt;
}

struct BoundCheck {
  std::string name;
  bool holds = false;
};

struct BoundReport {
  unsigned long b = 0;
  RealEnclosure lambda1_prefactor;  // exact Matveev prefactor, first form
  RealEnclosure coeff_lambda1;      // 2e13
  RealEnclosure gap_coeff;          // 1e14
  RealEnclosure lambda2_prefactor;  // 2 x exact prefactor, second form
  RealEnclosure coeff_lambda2;      // 7.3e26
  RealEnclosure T;                  // 2e27 log^3 b
  RealEnclosure chain;              // 4 T log^2 T
  RealEnclosure chain_simplified;   // (8e27 log^3 b)(90 log b)^2
  RealEnclosure M_b;                // 6.5e31 log^5 b
  mpz_class M;                      // ceil(M_b)
  std::vector<BoundCheck> checks;

  bool all_hold() const {
    for (const auto& c : checks)
      if (!c.holds) return false;
    return true;
  }
};

/// Reproduces the bound chain for base b, keeping every intermediate.
inline BoundReport search_bound(unsigned long b, const AlgebraicConstants& k = constants()) {
  require(b >= 2, "base must be at least 2");
  const Precision p = k.precision;
  const RealEnclosure log_b = log_of(b, p);
  const RealEnclosure log_log_b = log(log_b);
  auto lit = [&](const char* s) { return RealEnclosure::from_decimal(s, p); };

  BoundReport r{
      .b = b,
      .lambda1_prefactor = lambda1_prefactor(k),
      .coeff_lambda1 = lit(coefficients::kLambda1),
      .gap_coeff = lit(coefficients::kGap),
      .lambda2_prefactor = 2L * lambda2_prefactor(k),
      .coeff_lambda2 = lit(coefficients::kLambda2),
      .T = lit(coefficients::kStep2) * pow(log_b, 3),
      .chain = RealEnclosure(p),
      .chain_simplified = RealEnclosure(p),
      .M_b = lit(coefficients::kFinal) * pow(log_b, 5),
      .M = 0,
      .checks = {},
  };
  r.chain = guzman_luca(r.T);
  const RealEnclosure log_T_cap = 63L + 3L * log_log_b;
  const RealEnclosure ninety_log_b = 90L * log_b;
  r.chain_simplified = lit("8e27") * pow(log_b, 3) * ninety_log_b * ninety_log_b;
  r.M = r.M_b.ceil_upper();

  // Second form: n log alpha < log 5 + 7.3e26 log^2 n log^3 b must imply n < 2e27 log^2 n log^3 b
  // for every n >= 5; the worst case is n = 5.
  const RealEnclosure log5 = log_of(5, p);
  const RealEnclosure min_scale = pow(log5, 2) * pow(log_b, 3);
  const RealEnclosure step2_rhs = lit(coefficients::kStep2) * min_scale * k.log_alpha;

  r.checks = {
      {"lambda1 prefactor <= 2e13", certainly_less_equal(r.lambda1_prefactor, r.coeff_lambda1)},
      {"lambda2 prefactor <= 7.3e26", certainly_less_equal(r.lambda2_prefactor, r.coeff_lambda2)},
      {"log 5 + 7.3e26 log^2 n log^3 b < 2e27 log alpha log^2 n log^3 b",
       certainly_less(log5 + r.coeff_lambda2 * min_scale, step2_rhs)},
      {"T > 256", certainly_less(RealEnclosure(256L, p), r.T)},
      {"log T < 63 + 3 log log b", certainly_less(log(r.T), log_T_cap)},
      {"63 + 3 log log b < 90 log b", certainly_less(log_T_cap, ninety_log_b)},
      {"4 T log^2 T <= 8e27 log^3 b (90 log b)^2", certainly_less_equal(r.chain, r.chain_simplified)},
      {"8e27 log^3 b (90 log b)^2 <= 6.5e31 log^5 b", certainly_less_equal(r.chain_simplified, r.M_b)},
      {"M_b >= T", certainly_less_equal(r.T, r.M_b)},
  };
  return r;
}

/// Window for l from the size of N_n: ((n - 2) log alpha / log b, n).
struct EllRange {
  RealEnclosure lower;
  unsigned long upper = 0;

  /// Certified lower < ell < upper.
  bool strictly_contains(unsigned long ell) const {
    return ell < upper && certainly_less(lower, RealEnclosure(static_cast<long>(ell), lower.precision()));
  }
};

inline EllRange ell_range(unsigned long n, unsigned long b, const AlgebraicConstants& k = constants()) {
  require(n >= 4, "l window needs n >= 4");
  require(b >= 2, "base must be at least 2");
  return {static_cast<long>(n - 2) * k.log_alpha / log_of(b, k.precision), n};
}

}  // namespace narayana
