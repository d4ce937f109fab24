#include <doctest.h>

#include "qcantor/construction.hpp"
#include "qcantor/transforms.hpp"

using namespace qcantor;

namespace {

const PeriodicSequence& q24() {
  static const PeriodicSequence q({Integer(2), Integer(4)});
  return q;
}

DigitPrefix block_of(const Position& start, std::vector<Integer> digits, const BasicSequence& q) {
  DigitPrefix b;
  b.start = start;
  for (std::size_t t = 0; t < digits.size(); ++t) b.bases.push_back(q.base_at(start + static_cast<unsigned long>(t)));
  b.digits = std::move(digits);
  return b;
}

// Value of the block relative to its own support: packed integer over
// q_N...q_M.
Rational local_value(const DigitPrefix& b) {
  Integer packed = 0;
  Integer scale = 1;
  for (std::size_t t = 0; t < b.size(); ++t) {
    packed = packed * b.bases[t] + b.digits[t];
    scale *= b.bases[t];
  }
  return Rational(packed, scale);
}

}  // namespace

TEST_CASE("tau_rational") {
  CHECK(tau_rational(AffineMap(1, 0), Rational(7, 8)) == Rational(7, 8));
  CHECK(tau_rational(AffineMap(Rational(3, 2), Rational(1, 3)), Rational(1, 4)) == Rational(17, 24));
  CHECK(tau_rational(AffineMap(-1, 1), Rational(1, 4)) == Rational(3, 4));
  CHECK_THROWS_AS(AffineMap(0, 1), DomainError);
}

TEST_CASE("tau_digit examples") {
  RationalOracle quarter(Rational(1, 4), q24());
  CHECK(tau_digit(AffineMap(1, 0), quarter, 2) == quarter.digit_at(2));
  CHECK(tau_digit(AffineMap(1, Rational(1, 2)), quarter, 1) == 1);
  RationalOracle eighth(Rational(1, 8), q24());
  CHECK(tau_digit(AffineMap(2, 0), eighth, 2) == 2);
  CHECK(tau_digit(AffineMap(2, 0), eighth, 1) == 0);
}

TEST_CASE("tau_digit agrees with expanding the exact image") {
  const PeriodicSequence q({Integer(3), Integer(5), Integer(2)});
  const std::vector<std::pair<Rational, Rational>> maps{
      {Rational(1), Rational(1, 7)}, {Rational(3, 2), Rational(1, 3)}, {Rational(-1), Rational(1)},
      {Rational(-5, 3), Rational(0)}, {Rational(2), Rational(-3, 4)}};
  for (long p = 1; p < 30; p += 4) {
    const Rational x(p, 31);
    RationalOracle ox(x, q);
    for (const auto& [r, s] : maps) {
      const AffineMap m(r, s);
      const auto expected = expand_rational(m(x), q, 12);
      CHECK(tau_digit(m, ox, 0) == expected.integer_part);
      for (unsigned long n = 1; n <= 12; ++n) CHECK(tau_digit(m, ox, n) == expected.prefix.digits[n - 1]);
    }
  }
}

TEST_CASE("tau_digit reports an unresolved carry") {
  // x = 1/2 - 2^-200 as a run of ones; the shift 1/2 + 2^-300 lands the
  // image just below 1, so every enclosure built from fewer than ~200 digits
  // straddles the carry.
  const PeriodicSequence q({Integer(2)});
  Expansion e;
  e.integer_part = 0;
  e.prefix.digits.assign(200, 1);
  e.prefix.digits[0] = 0;
  e.prefix.bases.assign(200, 2);
  PrefixOracle x(e, q);
  const AffineMap m(1, Rational(1, 2) + Rational(Integer(1), power(2, 300)));
  CHECK_THROWS_AS(tau_digit(m, x, 1, 16), UnresolvedCarry);
  CHECK(tau_digit(m, x, 1, 1024) == 1);
  CHECK(tau_digit(m, x, 0, 1024) == 0);
}

TEST_CASE("diff_positions") {
  EtaOracle eta;
  CHECK(diff_positions(AffineMap(1, 0), eta, 100).empty());
  for (const auto& p : diff_positions(AffineMap(1, Rational(1, 8)), eta, 100)) CHECK(p <= 3);
  for (const auto& p : diff_positions(AffineMap(1, Rational(1, 6)), eta, 100)) CHECK(p <= 13);
  CHECK_THROWS_AS(diff_positions(AffineMap(2, 0), eta, 10), DomainError);
}

TEST_CASE("denominator_horizon") {
  const auto& q = construction::constructed_q();
  CHECK(denominator_horizon(Rational(1, 8), q, 100) == Position(2));
  CHECK(denominator_horizon(Rational(1, 6), q, 100) == Position(13));
  CHECK(denominator_horizon(Rational(5, 12), q, 100) == Position(13));
  CHECK(denominator_horizon(Rational(3), q, 100) == Position(0));
  CHECK_FALSE(denominator_horizon(Rational(1, 7), q, 100).has_value());
}

TEST_CASE("mult_block") {
  const auto in = block_of(1, {0, 2}, q24());
  const auto out = mult_block(in, q24(), 2);
  CHECK(out.digits == std::vector<Integer>{1, 0});
  CHECK(mult_block(in, q24(), 1).digits == in.digits);
  CHECK(prefix_value(out, q24()) == 2 * prefix_value(in, q24()));

  // A scaled L_8 style block: value divisible by 8!, well below 8^64.
  const auto& q = construction::constructed_q();
  const Position start = construction::region_offset(8) + 1;
  const auto b = block_of(start, construction::small_block(8, 12345), q);
  const auto scaled = mult_block(b, q, Rational(3, 2));
  CHECK(local_value(scaled) == Rational(3, 2) * local_value(b));
}

TEST_CASE("mult_block errors") {
  const auto in = block_of(1, {0, 1}, q24());  // packed value 1
  try {
    mult_block(in, q24(), Rational(1, 2));
    FAIL("expected an error");
  } catch (const MultBlockError& e) {
    CHECK(e.kind() == MultBlockError::Kind::kNotInteger);
  }
  try {
    mult_block(in, q24(), 8);
    FAIL("expected an error");
  } catch (const MultBlockError& e) {
    CHECK(e.kind() == MultBlockError::Kind::kOverflow);
  }
  try {
    mult_block(in, q24(), -1);
    FAIL("expected an error");
  } catch (const MultBlockError& e) {
    CHECK(e.kind() == MultBlockError::Kind::kNegative);
  }
}
