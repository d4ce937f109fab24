#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcantor/basic_sequence.hpp"

namespace qcantor {

/// Window of Cantor digits E_start .. E_{start + size - 1} together with the
/// bases they were drawn against.
struct DigitPrefix {
  Position start = 1;
  std::vector<Integer> digits;
  std::vector<Integer> bases;

  std::size_t size() const { return digits.size(); }
  Position end() const { return start + static_cast<unsigned long>(digits.size()) - 1; }
  const Integer& digit_at(const Position& n) const;

  /// Throws DomainError unless start >= 1, bases match digits in length and
  /// 0 <= E_n < q_n everywhere.
  void validate() const;
};

/// x = E_0 . E_1 E_2 ... E_N with respect to Q.
struct Expansion {
  Integer integer_part;
  DigitPrefix prefix;
};

/// Greedy expansion of x to N digits: E_0 = floor(x), then
/// E_n = floor(f q_n), f <- f q_n - E_n.
Expansion expand_rational(const Rational& x, const BasicSequence& q, std::size_t count);

/// E_0 + sum E_n / (q_1 ... q_n), exact. The prefix must start at 1.
Rational reconstruct(const Expansion& e, const BasicSequence& q);

/// sum over the held positions of E_n / (q_1 ... q_n); the window may start
/// anywhere.
Rational prefix_value(const DigitPrefix& prefix, const BasicSequence& q);

/// T_{Q,n}(x) = (q_1 ... q_n) x mod 1.
Rational tq(const Rational& x, const BasicSequence& q, const Position& n);

/// Q_n^{(k)} = sum_{j=1}^{n} 1 / (q_j ... q_{j+k-1}).
Rational qnk(const BasicSequence& q, std::size_t n, std::size_t k);

/// Q_n^{(k)} at each of the increasing checkpoints n, in one pass.
std::vector<Rational> qnk_series(const BasicSequence& q, std::size_t k,
                                 std::span<const std::size_t> checkpoints);

nlohmann::ordered_json to_json(const Expansion& e);
Expansion expansion_from_json(const nlohmann::json& j);

}  // namespace qcantor
