#pragma once

#include <mpfr.h>

#include <string>

#include "qcantor/types.hpp"

namespace qcantor {

/// Owning MPFR value. Every arithmetic helper below takes an explicit
/// rounding direction so interval endpoints can be rounded outward.
class Real {
 public:
  explicit Real(mpfr_prec_t precision = 128);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Decimal string with `digits` significant digits.
  std::string to_string(int digits = 20) const;

 private:
  mpfr_t value_;
};

/// Closed enclosure [lo, hi] of a real quantity.
struct Interval {
  Real lo;
  Real hi;

  explicit Interval(mpfr_prec_t precision) : lo(precision), hi(precision) {}

  mpfr_prec_t precision() const { return lo.precision(); }
  double midpoint() const { return 0.5 * (lo.to_double() + hi.to_double()); }
};

Interval interval_of(const Integer& v, mpfr_prec_t precision);
Interval interval_of(const Rational& v, mpfr_prec_t precision);

Interval add(const Interval& a, const Interval& b);
Interval sub(const Interval& a, const Interval& b);
/// Requires both operands to be non-negative.
Interval mul_nonneg(const Interval& a, const Interval& b);
/// Requires a >= 0 and b > 0.
Interval div_pos(const Interval& a, const Interval& b);
/// Natural log of a positive enclosure.
Interval log(const Interval& a);
Interval exp(const Interval& a);

/// floor(lo) == floor(hi); fills `out` when it does.
bool common_floor(const Interval& a, Integer& out);

/// Certified floor(ln i) for i >= 1.
long floor_log(unsigned long i);

/// Cap on bits for the precision-escalating evaluators. Reads
/// QCANTOR_PRECISION_CAP once, falling back to 65536.
mpfr_prec_t default_precision_cap();

}  // namespace qcantor
