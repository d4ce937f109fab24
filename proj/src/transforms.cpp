#include "qcantor/transforms.hpp"

#include <optional>

namespace qcantor {

AffineMap::AffineMap(Rational r, Rational s) : r_(std::move(r)), s_(std::move(s)) {
  if (r_ == 0) throw DomainError("AffineMap: r must be non-zero");
}

Rational tau_rational(const AffineMap& m, const Rational& x) { return m(x); }

namespace {

// Running Horner state for the prefix of x: x in [e0 + packed/product,
// e0 + (packed + 1)/product).
struct PrefixEnclosure {
  Integer packed = 0;
  Integer product = 1;
  unsigned long length = 0;

  void extend_to(const DigitOracle& x, unsigned long target) {
    for (; length < target; ++length) {
      const Position n(length + 1);
      packed = packed * x.base_at(n) + x.digit_at(n);
      product *= x.base_at(n);
    }
  }
};

}  // namespace

Integer tau_digit(const AffineMap& m, const DigitOracle& x, const Position& n, std::size_t lookahead_cap) {
  if (n < 0) throw DomainError("tau_digit: position must be >= 0");
  const unsigned long pos = to_ulong(n, "tau_digit position");
  const BasicSequence& q = x.sequence();
  const Integer scale = pos == 0 ? Integer(1) : base_product(q, 1, n);
  const Rational e0(x.integer_part());

  PrefixEnclosure enc;
  for (std::size_t lookahead = 8;; lookahead *= 2) {
    if (lookahead > lookahead_cap) {
      throw UnresolvedCarry("tau_digit: digit " + n.get_str() + " unresolved with lookahead " +
                            std::to_string(lookahead_cap) + " (raise the lookahead cap)");
    }
    enc.extend_to(x, pos + static_cast<unsigned long>(lookahead));
    const Rational lo = e0 + Rational(enc.packed, enc.product);
    const Rational hi = e0 + Rational(enc.packed + 1, enc.product);
    Integer value;
    bool resolved = false;
    if (m.r() > 0) {
      // y in [r lo + s, r hi + s)
      const Integer low = floor_of(Rational(scale) * m(lo));
      const Integer high = ceil_of(Rational(scale) * m(hi)) - 1;
      resolved = low == high;
      value = low;
    } else {
      // y in (r hi + s, r lo + s]
      const Integer low = floor_of(Rational(scale) * m(hi));
      const Integer high = floor_of(Rational(scale) * m(lo));
      resolved = low == high;
      value = high;
    }
    if (!resolved) continue;
    if (pos == 0) return value;
    Integer digit;
    const Integer base = q.base_at(n);
    mpz_fdiv_r(digit.get_mpz_t(), value.get_mpz_t(), base.get_mpz_t());
    return digit;
  }
}

std::vector<Position> diff_positions(const AffineMap& m, const DigitOracle& x, const Position& horizon,
                                     std::size_t lookahead_cap) {
  if (m.r() != 1) throw DomainError("diff_positions: requires r = 1 (pure translation)");
  std::vector<Position> out;
  for (Position n = 1; n <= horizon; ++n) {
    if (tau_digit(m, x, n, lookahead_cap) != x.digit_at(n)) out.push_back(n);
  }
  return out;
}

std::optional<Position> denominator_horizon(const Rational& s, const BasicSequence& q, const Position& limit) {
  const Integer& den = s.get_den();
  if (den == 1) return Position(0);
  for (Position n = 1; n <= limit; ++n) {
    if (q.prefix_product_mod(n, den) == 0) return n;
  }
  return std::nullopt;
}

DigitPrefix mult_block(const DigitPrefix& block, const BasicSequence& q, const Rational& r) {
  if (r == 0) throw DomainError("mult_block: r must be non-zero");
  if (block.digits.empty()) throw DomainError("mult_block: empty block");
  if (block.start < 1) throw DomainError("mult_block: support must start at position >= 1");
  std::vector<Integer> bases;
  bases.reserve(block.digits.size());
  Integer packed = 0;
  Integer modulus = 1;
  for (std::size_t k = 0; k < block.digits.size(); ++k) {
    const Position n = block.start + static_cast<unsigned long>(k);
    bases.push_back(q.base_at(n));
    if (block.digits[k] < 0 || block.digits[k] >= bases.back()) {
      throw DomainError("mult_block: digit out of range at position " + n.get_str());
    }
    packed = packed * bases.back() + block.digits[k];
    modulus *= bases.back();
  }
  Rational scaled = r * Rational(packed);
  if (scaled.get_den() != 1) {
    throw MultBlockError(MultBlockError::Kind::kNotInteger,
                         "mult_block: r * E = " + to_string(scaled) + " is not an integer");
  }
  Integer image = scaled.get_num();
  if (image < 0) {
    throw MultBlockError(MultBlockError::Kind::kNegative, "mult_block: r * E = " + image.get_str() + " is negative");
  }
  if (image >= modulus) {
    throw MultBlockError(MultBlockError::Kind::kOverflow,
                         "mult_block: r * E = " + image.get_str() + " is not below q = " + modulus.get_str());
  }
  DigitPrefix out;
  out.start = block.start;
  out.bases = bases;
  out.digits.assign(block.digits.size(), Integer(0));
  for (std::size_t k = block.digits.size(); k-- > 0;) {
    mpz_fdiv_qr(image.get_mpz_t(), out.digits[k].get_mpz_t(), image.get_mpz_t(), bases[k].get_mpz_t());
  }
  return out;
}

}  // namespace qcantor
