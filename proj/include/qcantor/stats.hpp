#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qcantor/construction.hpp"
#include "qcantor/digit_oracle.hpp"

namespace qcantor::stats {

/// Ordered tuple of non-negative integers, length >= 1.
using Block = std::vector<Integer>;

/// Parses "0,2,6" into a block.
Block parse_block(std::string_view text);

/// N_n^Q(B, x): start positions m with 1 <= m <= n - k + 1 whose window
/// (E_m, ..., E_{m+k-1}) equals B. The whole block must fit in the first n
/// digits; n < k gives 0.
std::uint64_t count_block(const DigitOracle& x, const Block& block, std::uint64_t n);

/// Occurrences whose start lies in [first, last]; the block may run past
/// `last`.
std::uint64_t count_block_starts(const DigitOracle& x, const Block& block, const Position& first,
                                 const Position& last);

struct RatioPoint {
  std::uint64_t n = 0;
  std::uint64_t count = 0;
  Rational qnk;
  Rational ratio;  // count / qnk
};

/// N_n^Q(B, x) / Q_n^{(k)} at each increasing checkpoint, k = |B|.
std::vector<RatioPoint> ratio_series(const DigitOracle& x, const Block& block,
                                     std::span<const std::uint64_t> checkpoints);

constexpr std::uint64_t kDefaultSegmentBudget = std::uint64_t{1} << 22;

/// Occurrences of B in X_{i,j} counted by start position (N(B, x, X_{i,j})).
std::uint64_t segment_count(const DigitOracle& x, const Block& block, construction::Index i,
                            const Integer& j, std::uint64_t budget = kDefaultSegmentBudget);

struct SegmentQk {
  Rational exact;                          // Q^{(k)}(X_{i,j})
  Rational leading;                        // ell_i (n_i - k) / i^k
  std::optional<Rational> leading_gap;     // |exact / leading - 1| when leading > 0
  Rational main_gap;                       // |exact i^k / (ell_i n_i) - 1|
};

SegmentQk segment_qk(construction::Index i, const Integer& j, std::size_t k,
                     std::uint64_t budget = kDefaultSegmentBudget);

/// E_n / q_n at each position.
std::vector<Rational> digit_ratio_seq(const DigitOracle& x, std::span<const Position> positions);

/// D_N^* = max_i max(i/N - x_(i), x_(i) - (i-1)/N) over the sorted points.
Rational star_discrepancy(std::span<const Rational> points);

struct CesaroReport {
  std::size_t tail_start = 0;        // 0-based index where the tail begins
  Rational max_ratio_gap;            // max |A_m / B_m - 1| over the tail
  std::optional<Rational> max_growth;  // max B_m / sum_{i<m} B_i over the tail (m >= 2)
  Rational aggregate;                // sum A / sum B
};

/// Finite-horizon diagnostics for the two hypotheses of the block-sum limit
/// reduction. The tail is the second half of the sequence.
CesaroReport cesaro_check(std::span<const Rational> a, std::span<const Rational> b);

}  // namespace qcantor::stats
