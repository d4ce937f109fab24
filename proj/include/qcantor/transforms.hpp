#pragma once

#include <optional>
#include <vector>

#include "qcantor/digit_oracle.hpp"

namespace qcantor {

/// tau_{r,s}(x) = r x + s, i.e. sigma_s composed with pi_r.
class AffineMap {
 public:
  AffineMap(Rational r, Rational s);

  const Rational& r() const { return r_; }
  const Rational& s() const { return s_; }

  Rational operator()(const Rational& x) const { return r_ * x + s_; }

 private:
  Rational r_;
  Rational s_;
};

constexpr std::size_t kDefaultLookaheadCap = std::size_t{1} << 16;

Rational tau_rational(const AffineMap& m, const Rational& x);

/// n-th Cantor digit (n = 0 gives the integer part) of r x + s over the
/// oracle's own Q. x is enclosed in [lo, lo + 1/(q_1...q_{n+K})) from its
/// first n + K digits; K starts at 8 and doubles until the whole image
/// enclosure shares one value of floor(q_1...q_n y). Throws UnresolvedCarry
/// once K would exceed `lookahead_cap`.
Integer tau_digit(const AffineMap& m, const DigitOracle& x, const Position& n,
                  std::size_t lookahead_cap = kDefaultLookaheadCap);

/// Positions 1..horizon where sigma_s(x) and x disagree. Requires r = 1.
std::vector<Position> diff_positions(const AffineMap& m, const DigitOracle& x, const Position& horizon,
                                     std::size_t lookahead_cap = kDefaultLookaheadCap);

/// Smallest N with den(s) | q_1...q_N, searched up to `limit`; nullopt when
/// none is found.
std::optional<Position> denominator_horizon(const Rational& s, const BasicSequence& q,
                                            const Position& limit);

class MultBlockError : public DomainError {
 public:
  enum class Kind { kNotInteger, kOverflow, kNegative };

  MultBlockError(Kind kind, const std::string& what) : DomainError(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Digit block of r x on the same support [N, M] as the input block E. The
/// packed integer E-bar must satisfy r E-bar in Z and 0 <= r E-bar < q_N...q_M.
DigitPrefix mult_block(const DigitPrefix& block, const BasicSequence& q, const Rational& r);

}  // namespace qcantor
