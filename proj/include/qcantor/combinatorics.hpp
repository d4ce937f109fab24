#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "qcantor/types.hpp"

namespace qcantor::combinatorics {

enum class Verdict { kTrue, kFalse, kInconclusive };

std::string to_string(Verdict v);

/// Outcome of comparing an exact integer LHS with coeff * e^{-t}.
/// kTrue: lhs <= rhs_lower_bound <= rhs.  kFalse: lhs > rhs_upper_bound >= rhs.
struct BoundCheck {
  Integer lhs;
  Rational rhs_lower_bound;
  std::optional<Rational> rhs_upper_bound;
  Verdict verdict = Verdict::kInconclusive;
  std::size_t precision_used = 0;  // bits of the dyadic bounds at the deciding round
  std::size_t squarings = 0;       // m = 2^squarings in (1 -+ t/m)^m
  bool precondition_ok = false;
  std::string precondition_note;   // which lemma hypotheses fail, if any
};

constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 24;
constexpr std::size_t kDefaultBoundPrecisionCap = std::size_t{1} << 20;

/// p_b(n, k) = C(n, k) (b - 1)^{n - k}: length-n base-b blocks holding exactly
/// k copies of a fixed digit.
Integer p_count(unsigned long b, unsigned long n, unsigned long k);

/// Every length-k word over base b occurs (overlapping windows) between
/// (b^-k - eps) n and (b^-k + eps) n times in the block, n = |block|.
bool eps_k_normal(std::span<const unsigned> block, unsigned b, unsigned k, const Rational& eps);

/// B_b(n, eps, k) by enumerating all b^n blocks. Requires b^n <= budget.
Integer count_bad_blocks(unsigned b, unsigned n, const Rational& eps, unsigned k,
                         std::uint64_t budget = kDefaultEnumerationBudget);

/// B_b(n, eps, 1) by dynamic programming over digit-count vectors.
Integer count_bad_k1(unsigned b, unsigned long n, const Rational& eps,
                     std::uint64_t budget = kDefaultEnumerationBudget);

/// Certified comparison lhs <= coeff * e^{-t}. e^{-t} is bracketed by
/// (1 - t/m)^m and (1 + t/m)^{-m}, m = 2^p, evaluated in dyadic rationals
/// with outward floors; p and the bit precision grow until the comparison
/// resolves or the precision passes `precision_cap`.
BoundCheck compare_with_exponential(const Integer& lhs, const Integer& coeff, const Rational& t,
                                    std::size_t precision_cap = kDefaultBoundPrecisionCap,
                                    std::size_t initial_precision = 0);

/// Tail mass of digit counts away from n/b against 2^14 b^n e^{-eps^2 n / 80}.
BoundCheck check_k1(unsigned long b, unsigned long n, const Rational& eps,
                    std::size_t precision_cap = kDefaultBoundPrecisionCap, std::size_t initial_precision = 0);

/// Tails of p_b(bn, n + j), |j| >= ceil(eps n), against
/// 2^14 b^{bn} e^{-eps^2 n / (10 b)}.
BoundCheck check_bugeaud(unsigned long b, unsigned long n, const Rational& eps,
                         std::size_t precision_cap = kDefaultBoundPrecisionCap, std::size_t initial_precision = 0);

/// B_b(n, eps, k) against 2^15 k b^{n+k} e^{-eps^2 n / (160 k)}.
BoundCheck check_epsilonk(unsigned b, unsigned n, const Rational& eps, unsigned k,
                          std::uint64_t budget = kDefaultEnumerationBudget,
                          std::size_t precision_cap = kDefaultBoundPrecisionCap, std::size_t initial_precision = 0);

/// sum_{j <= lower_max} p_b(N, j) + sum_{j >= upper_min} p_b(N, j), with each
/// range clipped to [0, N]. Overlapping ranges are summed independently.
Integer tail_sum(unsigned long b, unsigned long total, long long lower_max, long long upper_min);

}  // namespace qcantor::combinatorics
