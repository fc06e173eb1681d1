#pragma once

// Certified real arithmetic: every quantity is an interval [lower, upper] with
// MPFR endpoints (exact dyadic rationals) maintained under outward rounding.

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

#include "narayana/error.hpp"

namespace narayana {

inline constexpr int kDefaultDigits = 200;
inline constexpr int kMinDigits = 30;

/// Working precision expressed in decimal digits.
struct Precision {
  static constexpr mpfr_prec_t kGuardBits = 16;

  int digits = kDefaultDigits;

  mpfr_prec_t bits() const {
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.321928094887362)) + kGuardBits;
  }

  /// Precision raised by `factor` (used by retry escalation).
  Precision scaled(double factor) const {
    return Precision{static_cast<int>(std::ceil(digits * factor))};
  }

  friend bool operator==(Precision, Precision) = default;
  friend auto operator<=>(Precision a, Precision b) { return a.digits <=> b.digits; }
};

namespace detail {

/// Owning handle for an mpfr_t.
class Float {
 public:
  explicit Float(mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
  }
  Float(const Float& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  Float(Float&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }
  Float& operator=(const Float& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  Float& operator=(Float&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~Float() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace detail

/// Closed interval with exact endpoints guaranteed to contain a real value.
class RealEnclosure {
 public:
  explicit RealEnclosure(Precision p = Precision{}) : prec_(p), lo_(p.bits()), hi_(p.bits()) {}

  RealEnclosure(long value, Precision p) : RealEnclosure(p) {
    mpfr_set_si(lo_.get(), value, MPFR_RNDD);
    mpfr_set_si(hi_.get(), value, MPFR_RNDU);
  }

  RealEnclosure(const mpz_class& value, Precision p) : RealEnclosure(p) {
    mpfr_set_z(lo_.get(), value.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(hi_.get(), value.get_mpz_t(), MPFR_RNDU);
  }

  static RealEnclosure from_rational(const mpq_class& value, Precision p) {
    RealEnclosure r(p);
    mpfr_set_q(r.lo_.get(), value.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), value.get_mpq_t(), MPFR_RNDU);
    return r;
  }

  /// Encloses a decimal literal such as "6.5e31" exactly.
  static RealEnclosure from_decimal(const std::string& literal, Precision p) {
    RealEnclosure r(p);
    if (mpfr_set_str(r.lo_.get(), literal.c_str(), 10, MPFR_RNDD) != 0 ||
        mpfr_set_str(r.hi_.get(), literal.c_str(), 10, MPFR_RNDU) != 0) {
      throw Error(ErrorKind::Domain, "not a decimal literal: " + literal);
    }
    return r;
  }

  static RealEnclosure from_bounds(const mpq_class& lower, const mpq_class& upper, Precision p) {
    require(lower <= upper, "enclosure bounds out of order");
    RealEnclosure r(p);
    mpfr_set_q(r.lo_.get(), lower.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), upper.get_mpq_t(), MPFR_RNDU);
    return r;
  }

  /// Encloses [lower, upper] given as MPFR values of any precision.
  static RealEnclosure from_raw_bounds(mpfr_srcptr lower, mpfr_srcptr upper, Precision p) {
    require(mpfr_lessequal_p(lower, upper), "enclosure bounds out of order");
    RealEnclosure r(p);
    mpfr_set(r.lo_.get(), lower, MPFR_RNDD);
    mpfr_set(r.hi_.get(), upper, MPFR_RNDU);
    return r;
  }

  /// Smallest enclosure containing both arguments.
  static RealEnclosure hull(const RealEnclosure& x, const RealEnclosure& y) {
    RealEnclosure r(common(x, y));
    mpfr_min(r.lo_.get(), x.lo_.get(), y.lo_.get(), MPFR_RNDD);
    mpfr_max(r.hi_.get(), x.hi_.get(), y.hi_.get(), MPFR_RNDU);
    return r;
  }

  Precision precision() const { return prec_; }

  mpq_class lower() const { return to_rational(lo_.get()); }
  mpq_class upper() const { return to_rational(hi_.get()); }
  mpfr_srcptr lower_raw() const { return lo_.get(); }
  mpfr_srcptr upper_raw() const { return hi_.get(); }

  double lower_double() const { return mpfr_get_d(lo_.get(), MPFR_RNDD); }
  double upper_double() const { return mpfr_get_d(hi_.get(), MPFR_RNDU); }
  double approx() const {
    detail::Float mid(prec_.bits() + 1);
    mpfr_add(mid.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    return mpfr_get_d(mid.get(), MPFR_RNDN);
  }

  /// upper - lower, rounded up.
  double width() const {
    detail::Float w(prec_.bits());
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    return mpfr_get_d(w.get(), MPFR_RNDU);
  }

  /// Width relative to the magnitude (absolute width when the enclosure touches zero).
  double relative_width() const {
    detail::Float w(prec_.bits());
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    detail::Float m(prec_.bits());
    mpfr_abs(m.get(), lo_.get(), MPFR_RNDD);
    if (mpfr_cmpabs(hi_.get(), m.get()) < 0) mpfr_abs(m.get(), hi_.get(), MPFR_RNDD);
    if (contains_zero() || mpfr_zero_p(m.get())) return mpfr_get_d(w.get(), MPFR_RNDU);
    mpfr_div(w.get(), w.get(), m.get(), MPFR_RNDU);
    return mpfr_get_d(w.get(), MPFR_RNDU);
  }

  bool contains(const mpq_class& value) const {
    return mpfr_cmp_q(lo_.get(), value.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), value.get_mpq_t()) >= 0;
  }
  bool contains(const RealEnclosure& inner) const {
    return mpfr_lessequal_p(lo_.get(), inner.lo_.get()) && mpfr_greaterequal_p(hi_.get(), inner.hi_.get());
  }
  bool contains_zero() const { return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0; }
  bool is_positive() const { return mpfr_sgn(lo_.get()) > 0; }
  bool is_negative() const { return mpfr_sgn(hi_.get()) < 0; }

  mpz_class floor_lower() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), lo_.get(), MPFR_RNDD);
    return z;
  }
  mpz_class ceil_upper() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), hi_.get(), MPFR_RNDU);
    return z;
  }

  /// Decimal rendering "[lower, upper]" with `significant` digits per endpoint.
  std::string str(int significant = 20) const {
    return "[" + format(lo_.get(), significant, MPFR_RNDD) + ", " + format(hi_.get(), significant, MPFR_RNDU) + "]";
  }

  /// Lower endpoint in scientific notation, rounded down.
  std::string lower_str(int significant = 20) const { return format(lo_.get(), significant, MPFR_RNDD); }
  /// Upper endpoint in scientific notation, rounded up.
  std::string upper_str(int significant = 20) const { return format(hi_.get(), significant, MPFR_RNDU); }

  // Arithmetic ------------------------------------------------------------

  friend RealEnclosure operator-(const RealEnclosure& x) {
    RealEnclosure r(x.prec_);
    mpfr_neg(r.lo_.get(), x.hi_.get(), MPFR_RNDD);
    mpfr_neg(r.hi_.get(), x.lo_.get(), MPFR_RNDU);
    return r;
  }

  friend RealEnclosure operator+(const RealEnclosure& x, const RealEnclosure& y) {
    RealEnclosure r(common(x, y));
    mpfr_add(r.lo_.get(), x.lo_.get(), y.lo_.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), x.hi_.get(), y.hi_.get(), MPFR_RNDU);
    return r;
  }

  friend RealEnclosure operator-(const RealEnclosure& x, const RealEnclosure& y) {
    RealEnclosure r(common(x, y));
    mpfr_sub(r.lo_.get(), x.lo_.get(), y.hi_.get(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), x.hi_.get(), y.lo_.get(), MPFR_RNDU);
    return r;
  }

  friend RealEnclosure operator*(const RealEnclosure& x, const RealEnclosure& y) {
    RealEnclosure r(common(x, y));
    if (mpfr_sgn(x.lo_.get()) >= 0 && mpfr_sgn(y.lo_.get()) >= 0) {
      mpfr_mul(r.lo_.get(), x.lo_.get(), y.lo_.get(), MPFR_RNDD);
      mpfr_mul(r.hi_.get(), x.hi_.get(), y.hi_.get(), MPFR_RNDU);
      return r;
    }
    r.corners(x, y, mpfr_mul);
    return r;
  }

  friend RealEnclosure operator/(const RealEnclosure& x, const RealEnclosure& y) {
    if (y.contains_zero()) throw Error(ErrorKind::Domain, "division by an enclosure containing zero");
    RealEnclosure r(common(x, y));
    if (mpfr_sgn(x.lo_.get()) >= 0 && y.is_positive()) {
      mpfr_div(r.lo_.get(), x.lo_.get(), y.hi_.get(), MPFR_RNDD);
      mpfr_div(r.hi_.get(), x.hi_.get(), y.lo_.get(), MPFR_RNDU);
      return r;
    }
    r.corners(x, y, mpfr_div);
    return r;
  }

  friend RealEnclosure operator+(const RealEnclosure& x, long y) { return x + RealEnclosure(y, x.prec_); }
  friend RealEnclosure operator-(const RealEnclosure& x, long y) { return x - RealEnclosure(y, x.prec_); }
  friend RealEnclosure operator*(const RealEnclosure& x, long y) { return x * RealEnclosure(y, x.prec_); }
  friend RealEnclosure operator/(const RealEnclosure& x, long y) { return x / RealEnclosure(y, x.prec_); }
  friend RealEnclosure operator+(long x, const RealEnclosure& y) { return RealEnclosure(x, y.prec_) + y; }
  friend RealEnclosure operator-(long x, const RealEnclosure& y) { return RealEnclosure(x, y.prec_) - y; }
  friend RealEnclosure operator*(long x, const RealEnclosure& y) { return RealEnclosure(x, y.prec_) * y; }
  friend RealEnclosure operator/(long x, const RealEnclosure& y) { return RealEnclosure(x, y.prec_) / y; }
  friend RealEnclosure operator*(const RealEnclosure& x, const mpz_class& y) { return x * RealEnclosure(y, x.prec_); }

  RealEnclosure& operator+=(const RealEnclosure& y) { return *this = *this + y; }
  RealEnclosure& operator-=(const RealEnclosure& y) { return *this = *this - y; }
  RealEnclosure& operator*=(const RealEnclosure& y) { return *this = *this * y; }
  RealEnclosure& operator/=(const RealEnclosure& y) { return *this = *this / y; }

  friend RealEnclosure abs(const RealEnclosure& x) {
    if (mpfr_sgn(x.lo_.get()) >= 0) return x;
    if (mpfr_sgn(x.hi_.get()) <= 0) return -x;
    RealEnclosure r(x.prec_);
    mpfr_set_zero(r.lo_.get(), 1);
    mpfr_neg(r.hi_.get(), x.lo_.get(), MPFR_RNDU);
    mpfr_max(r.hi_.get(), r.hi_.get(), x.hi_.get(), MPFR_RNDU);
    return r;
  }

  friend RealEnclosure log(const RealEnclosure& x) {
    if (!x.is_positive()) throw Error(ErrorKind::Domain, "logarithm of an enclosure not strictly positive");
    return x.monotone(mpfr_log);
  }

  friend RealEnclosure exp(const RealEnclosure& x) { return x.monotone(mpfr_exp); }

  friend RealEnclosure sqrt(const RealEnclosure& x) {
    if (mpfr_sgn(x.lo_.get()) < 0) throw Error(ErrorKind::Domain, "square root of a negative enclosure");
    return x.monotone(mpfr_sqrt);
  }

  /// Integer power; negative exponents require an enclosure excluding zero.
  friend RealEnclosure pow(const RealEnclosure& x, long k) {
    if (k < 0) return RealEnclosure(1, x.prec_) / pow(x, -k);
    if (k == 0) return RealEnclosure(1, x.prec_);
    if (mpfr_sgn(x.lo_.get()) >= 0) {
      RealEnclosure r(x.prec_);
      mpfr_pow_ui(r.lo_.get(), x.lo_.get(), static_cast<unsigned long>(k), MPFR_RNDD);
      mpfr_pow_ui(r.hi_.get(), x.hi_.get(), static_cast<unsigned long>(k), MPFR_RNDU);
      return r;
    }
    RealEnclosure result(1, x.prec_);
    RealEnclosure base = x;
    for (long e = k; e > 0; e >>= 1) {
      if (e & 1) result *= base;
      if (e > 1) base *= base;
    }
    return result;
  }

  /// Real power for a strictly positive base, via exp(y log x).
  friend RealEnclosure pow(const RealEnclosure& x, const RealEnclosure& y) { return exp(y * log(x)); }

 private:
  using BinaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
  using UnaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

  static Precision common(const RealEnclosure& x, const RealEnclosure& y) { return std::max(x.prec_, y.prec_); }

  // Evaluates an operation at all four endpoint pairs and keeps the extremes.
  void corners(const RealEnclosure& x, const RealEnclosure& y, BinaryOp op) {
    detail::Float t(prec_.bits());
    mpfr_srcptr xs[2] = {x.lo_.get(), x.hi_.get()};
    mpfr_srcptr ys[2] = {y.lo_.get(), y.hi_.get()};
    bool first = true;
    for (mpfr_srcptr xi : xs) {
      for (mpfr_srcptr yj : ys) {
        op(t.get(), xi, yj, MPFR_RNDD);
        if (first || mpfr_less_p(t.get(), lo_.get())) mpfr_set(lo_.get(), t.get(), MPFR_RNDD);
        op(t.get(), xi, yj, MPFR_RNDU);
        if (first || mpfr_greater_p(t.get(), hi_.get())) mpfr_set(hi_.get(), t.get(), MPFR_RNDU);
        first = false;
      }
    }
  }

  RealEnclosure monotone(UnaryOp op) const {
    RealEnclosure r(prec_);
    op(r.lo_.get(), lo_.get(), MPFR_RNDD);
    op(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
  }

  static mpq_class to_rational(mpfr_srcptr v) {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), v);
    return q;
  }

  static std::string format(mpfr_srcptr v, int significant, mpfr_rnd_t rnd) {
    char* raw = nullptr;
    std::string fmt = "%." + std::to_string(std::max(significant - 1, 0)) + "R*e";
    if (mpfr_asprintf(&raw, fmt.c_str(), rnd, v) < 0) return "?";
    std::string out(raw);
    mpfr_free_str(raw);
    return out;
  }

  Precision prec_;
  detail::Float lo_;
  detail::Float hi_;
};

/// True when every point of `x` is strictly below every point of `y`.
inline bool certainly_less(const RealEnclosure& x, const RealEnclosure& y) {
  return mpfr_less_p(x.upper_raw(), y.lower_raw());
}

inline bool certainly_less_equal(const RealEnclosure& x, const RealEnclosure& y) {
  return mpfr_lessequal_p(x.upper_raw(), y.lower_raw());
}

/// Natural logarithm of a positive integer.
inline RealEnclosure log_of(const mpz_class& value, Precision p) {
  if (value <= 0) throw Error(ErrorKind::Domain, "logarithm of non-positive integer " + value.get_str());
  return log(RealEnclosure(value, p));
}

}  // namespace narayana
