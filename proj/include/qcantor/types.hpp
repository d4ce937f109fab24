#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qcantor {

/// Arbitrary-precision integer; also used for positions and digits.
using Integer = mpz_class;
/// Exact fraction kept in lowest terms with a positive denominator.
using Rational = mpq_class;
/// Position n >= 1 inside a digit or base sequence.
using Position = mpz_class;

/// A precondition on the mathematical input was violated.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An enumeration, size or precision budget ran out before an answer was
/// established.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lookahead widening hit its cap without fixing a transformed digit.
class UnresolvedCarry : public BudgetExceeded {
 public:
  using BudgetExceeded::BudgetExceeded;
};

/// Text that should have been "p/q" (or an integer) could not be parsed.
class MalformedRational : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses "p/q", "-p/q" or a plain integer. Rejects zero denominators.
Rational parse_rational(std::string_view text);

/// Parses a decimal integer, with optional leading sign.
Integer parse_integer(std::string_view text);

inline std::string to_string(const Integer& v) { return v.get_str(10); }

/// "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rational& v);

/// Decimal rendering with `significant` significant digits (scientific
/// notation when the magnitude calls for it).
std::string to_decimal(const Rational& v, int significant = 12);

inline Integer floor_of(const Rational& v) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return out;
}

inline Integer ceil_of(const Rational& v) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return out;
}

/// x - floor(x), always in [0, 1).
inline Rational frac_of(const Rational& v) { return v - Rational(floor_of(v)); }

inline Integer factorial(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

inline Integer power(const Integer& base, unsigned long exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

/// Narrowing conversion that refuses values outside unsigned long.
unsigned long to_ulong(const Integer& v, std::string_view what);

}  // namespace qcantor
