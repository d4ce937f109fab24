#pragma once

#include <cstdint>
#include <string>

#include "qcantor/basic_sequence.hpp"
#include "qcantor/expansion.hpp"

namespace qcantor {

enum class Provenance { kRational, kConstructedEta, kSampledTheta, kFinitePrefix };

std::string to_string(Provenance p);

/// Random access to the Cantor digits of some x over a fixed basic sequence.
/// Implementations guarantee 0 <= digit_at(n) < sequence().base_at(n).
class DigitOracle {
 public:
  virtual ~DigitOracle() = default;

  virtual const BasicSequence& sequence() const = 0;
  virtual Integer integer_part() const = 0;
  virtual Integer digit_at(const Position& n) const = 0;
  virtual Provenance provenance() const = 0;

  Integer base_at(const Position& n) const { return sequence().base_at(n); }

  /// Digits first..first+count-1 with their bases.
  DigitPrefix window(const Position& first, std::size_t count) const;
};

/// Digits of a rational: E_n = floor(q_n T_{Q,n-1}(x)), so random access
/// costs one prefix product modulo the denominator.
class RationalOracle final : public DigitOracle {
 public:
  RationalOracle(Rational x, const BasicSequence& q) : x_(std::move(x)), q_(q) {}

  const BasicSequence& sequence() const override { return q_; }
  Integer integer_part() const override { return floor_of(x_); }
  Integer digit_at(const Position& n) const override;
  Provenance provenance() const override { return Provenance::kRational; }

  const Rational& value() const { return x_; }

 private:
  Rational x_;
  const BasicSequence& q_;
};

/// A finite expansion: the held digits, then zeros.
class PrefixOracle final : public DigitOracle {
 public:
  PrefixOracle(Expansion e, const BasicSequence& q);

  const BasicSequence& sequence() const override { return q_; }
  Integer integer_part() const override { return e_.integer_part; }
  Integer digit_at(const Position& n) const override;
  Provenance provenance() const override { return Provenance::kFinitePrefix; }

 private:
  Expansion e_;
  const BasicSequence& q_;
};

/// eta over the constructed Q.
class EtaOracle final : public DigitOracle {
 public:
  const BasicSequence& sequence() const override;
  Integer integer_part() const override { return 0; }
  Integer digit_at(const Position& n) const override;
  Provenance provenance() const override { return Provenance::kConstructedEta; }
};

/// A seeded point of Theta over the constructed Q. Where I_{i(n)} is empty
/// (the base-4 positions of the X_2 region) the digit falls back to eta's.
class ThetaOracle final : public DigitOracle {
 public:
  explicit ThetaOracle(std::uint64_t seed) : seed_(seed) {}

  const BasicSequence& sequence() const override;
  Integer integer_part() const override { return 0; }
  Integer digit_at(const Position& n) const override;
  Provenance provenance() const override { return Provenance::kSampledTheta; }

 private:
  std::uint64_t seed_;
};

}  // namespace qcantor
