#pragma once

#include <vector>

#include "qcantor/types.hpp"

namespace qcantor {

/// A basic sequence Q = (q_n), n >= 1, with every q_n >= 2.
class BasicSequence {
 public:
  virtual ~BasicSequence() = default;

  /// q_n for n >= 1.
  virtual Integer base_at(const Position& n) const = 0;

  /// (q_1 ... q_n) mod m, with the empty product (n = 0) equal to 1 mod m.
  /// The default walks the prefix one base at a time; sequences with
  /// structure override it.
  virtual Integer prefix_product_mod(const Position& n, const Integer& modulus) const;
};

/// Q repeating a fixed period forever, e.g. (2, 4, 2, 4, ...).
class PeriodicSequence final : public BasicSequence {
 public:
  explicit PeriodicSequence(std::vector<Integer> period);

  Integer base_at(const Position& n) const override;
  Integer prefix_product_mod(const Position& n, const Integer& modulus) const override;

  const std::vector<Integer>& period() const { return period_; }

 private:
  std::vector<Integer> period_;
};

/// q_a q_{a+1} ... q_b for 1 <= a <= b.
Integer base_product(const BasicSequence& q, const Position& a, const Position& b);

}  // namespace qcantor
