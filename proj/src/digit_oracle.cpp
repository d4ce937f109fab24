#include "qcantor/digit_oracle.hpp"

#include "qcantor/construction.hpp"

namespace qcantor {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::kRational: return "rational";
    case Provenance::kConstructedEta: return "constructed-eta";
    case Provenance::kSampledTheta: return "sampled-theta";
    case Provenance::kFinitePrefix: return "finite-prefix";
  }
  return "unknown";
}

DigitPrefix DigitOracle::window(const Position& first, std::size_t count) const {
  if (first < 1) throw DomainError("window: positions start at 1");
  DigitPrefix out;
  out.start = first;
  out.digits.reserve(count);
  out.bases.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const Position n = first + static_cast<unsigned long>(k);
    out.digits.push_back(digit_at(n));
    out.bases.push_back(base_at(n));
  }
  return out;
}

Integer RationalOracle::digit_at(const Position& n) const {
  if (n < 1) throw DomainError("digit_at: position must be >= 1");
  const Rational t = tq(x_, q_, n - 1);
  return floor_of(t * Rational(q_.base_at(n)));
}

PrefixOracle::PrefixOracle(Expansion e, const BasicSequence& q) : e_(std::move(e)), q_(q) {
  if (e_.prefix.start != 1) throw DomainError("PrefixOracle: prefix must start at position 1");
  for (std::size_t k = 0; k < e_.prefix.digits.size(); ++k) {
    const Integer base = q_.base_at(Position(static_cast<unsigned long>(k + 1)));
    if (e_.prefix.digits[k] < 0 || e_.prefix.digits[k] >= base) {
      throw DomainError("PrefixOracle: digit out of range at position " + std::to_string(k + 1));
    }
  }
}

Integer PrefixOracle::digit_at(const Position& n) const {
  if (n < 1) throw DomainError("digit_at: position must be >= 1");
  if (n > static_cast<unsigned long>(e_.prefix.digits.size())) return 0;
  return e_.prefix.digits[n.get_ui() - 1];
}

const BasicSequence& EtaOracle::sequence() const { return construction::constructed_q(); }

Integer EtaOracle::digit_at(const Position& n) const { return construction::eta_digit(n); }

const BasicSequence& ThetaOracle::sequence() const { return construction::constructed_q(); }

Integer ThetaOracle::digit_at(const Position& n) const {
  const auto loc = construction::locate(n);
  if (loc.large && construction::i_descriptor(loc.i).empty()) return construction::eta_digit(n);
  return construction::theta_digit(seed_, n);
}

}  // namespace qcantor
