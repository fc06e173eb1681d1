#pragma once

// Certified constants of the Narayana recurrence, logarithms, continued
// fraction convergents and the nearest-integer distance.

#include <gmpxx.h>
#include <mpfr.h>

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "narayana/error.hpp"
#include "narayana/real_enclosure.hpp"

namespace narayana {

/// Enclosures of the dominant root alpha of x^3 - x^2 - 1 and derived constants.
struct AlgebraicConstants {
  RealEnclosure alpha;
  RealEnclosure log_alpha;
  RealEnclosure c_alpha;   // 1 / (alpha^3 + 2)
  RealEnclosure beta_abs;  // modulus of the complex roots, equal to alpha^(-1/2)
  Precision precision;
};

/// Newton iteration from 1.5, then certification by a sign change of
/// x^3 - x^2 - 1 across the final enclosure.
inline AlgebraicConstants compute_constants(Precision p) {
  require(p.digits >= kMinDigits, "precision must be at least 30 digits");
  const mpfr_prec_t work = p.bits() + 64;

  detail::Float x(work), f(work), fp(work), t(work), dx(work);
  mpfr_set_d(x.get(), 1.5, MPFR_RNDN);
  bool converged = false;
  for (int iter = 0; iter < 200; ++iter) {
    // f = x^3 - x^2 - 1, fp = 3x^2 - 2x
    mpfr_sqr(t.get(), x.get(), MPFR_RNDN);
    mpfr_mul(f.get(), t.get(), x.get(), MPFR_RNDN);
    mpfr_sub(f.get(), f.get(), t.get(), MPFR_RNDN);
    mpfr_sub_ui(f.get(), f.get(), 1, MPFR_RNDN);
    mpfr_mul_ui(fp.get(), t.get(), 3, MPFR_RNDN);
    mpfr_mul_ui(t.get(), x.get(), 2, MPFR_RNDN);
    mpfr_sub(fp.get(), fp.get(), t.get(), MPFR_RNDN);
    mpfr_div(dx.get(), f.get(), fp.get(), MPFR_RNDN);
    mpfr_sub(x.get(), x.get(), dx.get(), MPFR_RNDN);
    if (mpfr_zero_p(dx.get()) || mpfr_get_exp(dx.get()) < -(p.bits() + 32)) {
      converged = true;
      break;
    }
  }
  if (!converged) throw Error(ErrorKind::NonConvergence, "Newton iteration for alpha did not converge");

  detail::Float lo(p.bits()), hi(p.bits()), delta(work);
  mpfr_set_ui_2exp(delta.get(), 1, -(p.bits() + 4), MPFR_RNDN);
  mpfr_sub(lo.get(), x.get(), delta.get(), MPFR_RNDD);
  mpfr_add(hi.get(), x.get(), delta.get(), MPFR_RNDU);

  const Precision eval{p.digits + 40};
  auto poly = [&](mpfr_srcptr point) {
    RealEnclosure v = RealEnclosure::from_raw_bounds(point, point, eval);
    return pow(v, 3) - pow(v, 2) - 1L;
  };
  if (!poly(lo.get()).is_negative() || !poly(hi.get()).is_positive()) {
    throw Error(ErrorKind::NonConvergence, "no certified sign change of x^3 - x^2 - 1 around alpha");
  }

  AlgebraicConstants k{
      .alpha = RealEnclosure::from_raw_bounds(lo.get(), hi.get(), p),
      .log_alpha = RealEnclosure(p),
      .c_alpha = RealEnclosure(p),
      .beta_abs = RealEnclosure(p),
      .precision = p,
  };
  k.log_alpha = log(k.alpha);
  k.c_alpha = 1L / (pow(k.alpha, 3) + 2L);
  k.beta_abs = sqrt(1L / k.alpha);
  return k;
}

/// Shared, lazily computed constants for a precision. References stay valid for the process lifetime.
inline const AlgebraicConstants& constants(Precision p = Precision{}) {
  static std::mutex mu;
  static std::map<int, AlgebraicConstants> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(p.digits);
  if (it == cache.end()) it = cache.emplace(p.digits, compute_constants(p)).first;
  return it->second;
}

inline RealEnclosure log_enclosure(const RealEnclosure& x) {
  if (!x.is_positive()) throw Error(ErrorKind::Domain, "logarithm argument must be strictly positive");
  return log(x);
}

inline RealEnclosure log_enclosure(const mpz_class& x, Precision p) { return log_of(x, p); }

// Continued fractions -------------------------------------------------------

struct Convergent {
  mpz_class p;
  mpz_class q;
  std::size_t index = 0;

  friend bool operator==(const Convergent& a, const Convergent& b) {
    return a.p == b.p && a.q == b.q && a.index == b.index;
  }
};

namespace detail {

/// Complete expansion of a rational by the Euclidean algorithm (floor convention).
inline std::vector<mpz_class> partial_quotients(const mpq_class& x) {
  std::vector<mpz_class> out;
  mpz_class num = x.get_num();
  mpz_class den = x.get_den();
  while (den != 0) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class r = num - a * den;
    out.push_back(a);
    num = den;
    den = r;
  }
  return out;
}

inline std::vector<Convergent> convergents_of(const std::vector<mpz_class>& quotients, std::size_t count) {
  std::vector<Convergent> out;
  mpz_class p_prev = 1, q_prev = 0, p = quotients.empty() ? mpz_class(0) : quotients[0], q = 1;
  if (count == 0 || quotients.empty()) return out;
  out.push_back({p, q, 0});
  for (std::size_t k = 1; k < count && k < quotients.size(); ++k) {
    mpz_class p_next = quotients[k] * p + p_prev;
    mpz_class q_next = quotients[k] * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
    out.push_back({p, q, k});
  }
  return out;
}

/// The rational with smallest denominator in the closed interval [lo, hi].
inline mpq_class simplest_rational_between(const mpq_class& lo, const mpq_class& hi) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (mpq_class(fl) == lo) return lo;
  if (mpq_class(fl + 1) <= hi) return mpq_class(fl + 1);
  mpq_class inner = simplest_rational_between(1 / (hi - fl), 1 / (lo - fl));
  mpq_class out = fl + 1 / inner;
  out.canonicalize();
  return out;
}

}  // namespace detail

/// A rational of small height inside `x`, if any: the simplest rational p/q
/// in the enclosure qualifies when q^4 * width <= 1. An irrational enclosed
/// to 10^-200 essentially never admits such a q.
inline std::optional<mpq_class> collapsed_rational(const RealEnclosure& x) {
  const mpq_class lo = x.lower();
  const mpq_class hi = x.upper();
  mpq_class simplest = detail::simplest_rational_between(lo, hi);
  mpz_class q = simplest.get_den();
  mpq_class test = mpq_class(q * q * q * q) * (hi - lo);
  if (test <= 1) return simplest;
  return std::nullopt;
}

/// Convergents of the real enclosed by `x`, up to the first with q > q_min
/// plus `extra` more. A convergent is emitted only when the expansions of
/// both endpoints agree on it. If the enclosure pins down a rational of small
/// height, the finite expansion of that rational is returned instead.
inline std::vector<Convergent> continued_fraction_convergents(const RealEnclosure& x, const mpz_class& q_min,
                                                              std::size_t extra = 10) {
  require(q_min >= 1, "q_min must be positive");
  if (auto r = collapsed_rational(x)) {
    auto quotients = detail::partial_quotients(*r);
    return detail::convergents_of(quotients, quotients.size());
  }

  const auto lo = detail::partial_quotients(x.lower());
  const auto hi = detail::partial_quotients(x.upper());
  // Quotient k is certified when both endpoints agree on it and both expansions continue past it.
  std::size_t certified = 0;
  while (certified + 1 < lo.size() && certified + 1 < hi.size() && lo[certified] == hi[certified]) ++certified;

  auto all = detail::convergents_of(lo, certified);
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i].q > q_min) {
      if (i + extra < all.size()) {
        all.resize(i + extra + 1);
        return all;
      }
      break;
    }
  }
  throw Error(ErrorKind::PrecisionExhausted,
              "endpoint expansions diverge after " + std::to_string(certified) + " partial quotients (q_min = " +
                  q_min.get_str() + ", precision " + std::to_string(x.precision().digits) + " digits)");
}

/// Certified enclosure of the distance from x to the nearest integer.
inline RealEnclosure nearest_int_distance(const RealEnclosure& x) {
  require(x.width() < 0.25, "enclosure too wide for a nearest-integer distance");
  mpz_class k_lo, k_hi;
  mpfr_get_z(k_lo.get_mpz_t(), x.lower_raw(), MPFR_RNDN);
  mpfr_get_z(k_hi.get_mpz_t(), x.upper_raw(), MPFR_RNDN);
  if (k_lo != k_hi) {
    throw Error(ErrorKind::Ambiguity, "enclosure " + x.str(12) + " straddles a half-integer");
  }
  return abs(x - RealEnclosure(k_lo, x.precision()));
}

}  // namespace narayana
