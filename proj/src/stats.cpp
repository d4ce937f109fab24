#include "qcantor/stats.hpp"

#include <algorithm>

namespace qcantor::stats {

namespace {

void require_block(const Block& block) {
  if (block.empty()) throw DomainError("block must have length >= 1");
  for (const auto& d : block) {
    if (d < 0) throw DomainError("block digits must be non-negative");
  }
}

Rational abs_of(const Rational& v) { return v < 0 ? Rational(-v) : v; }

}  // namespace

Block parse_block(std::string_view text) {
  Block out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    out.push_back(parse_integer(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  require_block(out);
  return out;
}

std::uint64_t count_block_starts(const DigitOracle& x, const Block& block, const Position& first,
                                 const Position& last) {
  require_block(block);
  if (first < 1) throw DomainError("count_block_starts: positions start at 1");
  if (last < first) return 0;
  const std::size_t k = block.size();
  const std::size_t starts = to_ulong(last - first + 1, "window size");
  const DigitPrefix window = x.window(first, starts + k - 1);
  std::uint64_t count = 0;
  for (std::size_t m = 0; m < starts; ++m) {
    if (std::equal(block.begin(), block.end(), window.digits.begin() + static_cast<std::ptrdiff_t>(m))) ++count;
  }
  return count;
}

std::uint64_t count_block(const DigitOracle& x, const Block& block, std::uint64_t n) {
  require_block(block);
  if (n < block.size()) return 0;
  return count_block_starts(x, block, 1, Position(static_cast<unsigned long>(n - block.size() + 1)));
}

std::vector<RatioPoint> ratio_series(const DigitOracle& x, const Block& block,
                                     std::span<const std::uint64_t> checkpoints) {
  require_block(block);
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end()) ||
      std::adjacent_find(checkpoints.begin(), checkpoints.end()) != checkpoints.end()) {
    throw DomainError("ratio_series: checkpoints must be strictly increasing");
  }
  std::vector<RatioPoint> out;
  if (checkpoints.empty()) return out;
  if (checkpoints.front() < 1) throw DomainError("ratio_series: checkpoints must be >= 1");

  const std::vector<std::size_t> points(checkpoints.begin(), checkpoints.end());
  const std::vector<Rational> denominators = qnk_series(x.sequence(), block.size(), points);

  // Additive over disjoint start ranges: extend the previous count.
  std::uint64_t count = 0;
  std::uint64_t counted_through = 0;  // last start position already scanned
  for (std::size_t c = 0; c < points.size(); ++c) {
    const std::uint64_t n = points[c];
    if (n >= block.size()) {
      const std::uint64_t last_start = n - block.size() + 1;
      count += count_block_starts(x, block, Position(static_cast<unsigned long>(counted_through + 1)),
                                  Position(static_cast<unsigned long>(last_start)));
      counted_through = last_start;
    }
    RatioPoint p;
    p.n = n;
    p.count = count;
    p.qnk = denominators[c];
    p.ratio = Rational(static_cast<unsigned long>(count)) / p.qnk;
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

construction::SegmentAddress guarded_segment(construction::Index i, const Integer& j, std::uint64_t budget) {
  const auto seg = construction::segment_bounds(i, j);
  const Integer length = seg.last - seg.first + 1;
  if (length > Integer(static_cast<unsigned long>(budget))) {
    throw BudgetExceeded("segment X_{" + std::to_string(i) + "," + j.get_str() + "} has " + length.get_str() +
                         " positions, above the scan budget " + std::to_string(budget));
  }
  return seg;
}

}  // namespace

std::uint64_t segment_count(const DigitOracle& x, const Block& block, construction::Index i, const Integer& j,
                            std::uint64_t budget) {
  const auto seg = guarded_segment(i, j, budget);
  return count_block_starts(x, block, seg.first, seg.last);
}

SegmentQk segment_qk(construction::Index i, const Integer& j, std::size_t k, std::uint64_t budget) {
  if (k < 1) throw DomainError("segment_qk: k must be >= 1");
  const auto seg = guarded_segment(i, j, budget);
  const auto& q = construction::constructed_q();
  const std::size_t length = to_ulong(seg.last - seg.first + 1, "segment length");

  std::vector<Integer> bases;
  bases.reserve(length + k - 1);
  for (std::size_t t = 0; t + 1 < length + k; ++t) bases.push_back(q.base_at(seg.first + static_cast<unsigned long>(t)));

  SegmentQk out;
  out.exact = 0;
  for (std::size_t m = 0; m < length; ++m) {
    Integer window = 1;
    for (std::size_t t = 0; t < k; ++t) window *= bases[m + t];
    out.exact += Rational(1, window);
  }

  const auto& p = construction::params(i);
  const Integer ik = power(Integer(i), static_cast<unsigned long>(k));
  out.leading = Rational(p.ell * (p.n - static_cast<unsigned long>(k)), ik);
  out.leading.canonicalize();
  if (out.leading > 0) out.leading_gap = abs_of(out.exact / out.leading - 1);
  Rational main(p.ell * p.n, ik);
  main.canonicalize();
  out.main_gap = abs_of(out.exact / main - 1);
  return out;
}

std::vector<Rational> digit_ratio_seq(const DigitOracle& x, std::span<const Position> positions) {
  std::vector<Rational> out;
  out.reserve(positions.size());
  for (const auto& n : positions) {
    Rational r(x.digit_at(n), x.base_at(n));
    r.canonicalize();
    out.push_back(std::move(r));
  }
  return out;
}

Rational star_discrepancy(std::span<const Rational> points) {
  if (points.empty()) throw DomainError("star_discrepancy: need at least one point");
  std::vector<Rational> sorted(points.begin(), points.end());
  for (const auto& v : sorted) {
    if (v < 0 || v >= 1) throw DomainError("star_discrepancy: point " + to_string(v) + " outside [0, 1)");
  }
  std::sort(sorted.begin(), sorted.end());
  const unsigned long count = sorted.size();
  Rational worst = 0;
  for (unsigned long i = 1; i <= count; ++i) {
    const Rational& x = sorted[i - 1];
    const Rational above = Rational(i, count) - x;
    const Rational below = x - Rational(i - 1, count);
    if (above > worst) worst = above;
    if (below > worst) worst = below;
  }
  worst.canonicalize();
  return worst;
}

CesaroReport cesaro_check(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw DomainError("cesaro_check: sequences differ in length");
  if (a.empty()) throw DomainError("cesaro_check: empty sequences");
  for (const auto& v : b) {
    if (v <= 0) throw DomainError("cesaro_check: every B_m must be positive");
  }
  CesaroReport out;
  out.tail_start = a.size() / 2;
  out.max_ratio_gap = 0;
  Rational sum_a = 0;
  Rational sum_b = 0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    if (m >= out.tail_start) {
      const Rational gap = abs_of(a[m] / b[m] - 1);
      if (gap > out.max_ratio_gap) out.max_ratio_gap = gap;
      if (m >= 1) {
        const Rational growth = b[m] / sum_b;
        if (!out.max_growth || growth > *out.max_growth) out.max_growth = growth;
      }
    }
    sum_a += a[m];
    sum_b += b[m];
  }
  out.aggregate = sum_a / sum_b;
  return out;
}

}  // namespace qcantor::stats
