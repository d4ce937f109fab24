#pragma once

#include <cstdint>

#include "qcantor/types.hpp"

namespace qcantor {

/// Stateless generator: every draw is a pure function of (seed, key,
/// counter), so sampling position n never depends on which other positions
/// were sampled before it or on which thread asked.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, const Integer& key);

  std::uint64_t word(std::uint64_t counter) const;

  /// Uniform integer in [0, bound) by rejection over whole 64-bit words.
  Integer uniform_below(const Integer& bound) const;

 private:
  std::uint64_t stream_;
};

}  // namespace qcantor
