#include "qcantor/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qcantor::combinatorics {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kTrue: return "TRUE";
    case Verdict::kFalse: return "FALSE";
    case Verdict::kInconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

Integer p_count(unsigned long b, unsigned long n, unsigned long k) {
  if (b < 2) throw DomainError("p_count: base must be >= 2");
  if (k > n) throw DomainError("p_count: requires 0 <= k <= n");
  Integer binom;
  mpz_bin_uiui(binom.get_mpz_t(), n, k);
  return binom * power(Integer(b - 1), n - k);
}

namespace {

void require_eps(const Rational& eps) {
  if (eps < 0) throw DomainError("eps must be non-negative");
}

// Integer count window [lo, hi] equivalent to (b^-k - eps) n <= c <= (b^-k + eps) n.
std::pair<Integer, Integer> count_bounds(unsigned long b, unsigned long k, unsigned long n, const Rational& eps) {
  const Rational centre(Integer(1), power(Integer(b), k));
  const Rational len(static_cast<unsigned long>(n));
  return {ceil_of((centre - eps) * len), floor_of((centre + eps) * len)};
}

std::uint64_t checked_power(unsigned long b, unsigned long e, std::uint64_t budget, const char* what) {
  const Integer v = power(Integer(b), e);
  if (v > Integer(static_cast<unsigned long>(budget))) {
    throw BudgetExceeded(std::string(what) + ": " + std::to_string(b) + "^" + std::to_string(e) +
                         " exceeds the enumeration budget " + std::to_string(budget));
  }
  return v.get_ui();
}

// Counts windows into `counts` (size b^k) and tests them against [lo, hi].
bool windows_within(std::span<const unsigned> block, unsigned b, unsigned k, long lo, long hi,
                    std::vector<long>& counts) {
  std::fill(counts.begin(), counts.end(), 0);
  const std::size_t words = counts.size();
  if (block.size() >= k) {
    std::size_t code = 0;
    for (std::size_t t = 0; t < k; ++t) code = code * b + block[t];
    ++counts[code];
    std::size_t top = words / b;  // b^{k-1}
    for (std::size_t m = k; m < block.size(); ++m) {
      code = (code % top) * b + block[m];
      ++counts[code];
    }
  }
  return std::all_of(counts.begin(), counts.end(), [&](long c) { return c >= lo && c <= hi; });
}

long clamp_bound(const Integer& v) {
  if (v > Integer(static_cast<long>(1) << 40)) return static_cast<long>(1) << 40;
  if (v < Integer(-(static_cast<long>(1) << 40))) return -(static_cast<long>(1) << 40);
  return v.get_si();
}

}  // namespace

bool eps_k_normal(std::span<const unsigned> block, unsigned b, unsigned k, const Rational& eps) {
  if (b < 2) throw DomainError("eps_k_normal: base must be >= 2");
  if (k < 1 || block.size() < k) throw DomainError("eps_k_normal: requires 1 <= k <= n");
  require_eps(eps);
  for (unsigned d : block) {
    if (d >= b) throw DomainError("eps_k_normal: digit " + std::to_string(d) + " outside base " + std::to_string(b));
  }
  const std::uint64_t words = checked_power(b, k, kDefaultEnumerationBudget, "eps_k_normal");
  const auto [lo, hi] = count_bounds(b, k, block.size(), eps);
  std::vector<long> counts(words);
  return windows_within(block, b, k, clamp_bound(lo), clamp_bound(hi), counts);
}

Integer count_bad_blocks(unsigned b, unsigned n, const Rational& eps, unsigned k, std::uint64_t budget) {
  if (b < 2) throw DomainError("count_bad_blocks: base must be >= 2");
  if (k < 1 || n < k) throw DomainError("count_bad_blocks: requires 1 <= k <= n");
  require_eps(eps);
  const std::uint64_t blocks = checked_power(b, n, budget, "count_bad_blocks");
  const std::uint64_t words = checked_power(b, k, budget, "count_bad_blocks");
  const auto [lo_z, hi_z] = count_bounds(b, k, n, eps);
  const long lo = clamp_bound(lo_z);
  const long hi = clamp_bound(hi_z);

  std::vector<unsigned> digits(n, 0);
  std::vector<long> counts(words);
  std::uint64_t bad = 0;
  for (std::uint64_t idx = 0; idx < blocks; ++idx) {
    if (!windows_within(digits, b, k, lo, hi, counts)) ++bad;
    for (std::size_t pos = n; pos-- > 0;) {
      if (++digits[pos] < b) break;
      digits[pos] = 0;
    }
  }
  return Integer(static_cast<unsigned long>(bad));
}

Integer count_bad_k1(unsigned b, unsigned long n, const Rational& eps, std::uint64_t budget) {
  if (b < 2) throw DomainError("count_bad_k1: base must be >= 2");
  if (n < 1) throw DomainError("count_bad_k1: n must be >= 1");
  require_eps(eps);
  const Integer work = Integer(b) * Integer(n) * Integer(n + 1);
  if (work > Integer(static_cast<unsigned long>(budget))) {
    throw BudgetExceeded("count_bad_k1: b n^2 = " + work.get_str() + " exceeds the budget");
  }
  const auto [lo_z, hi_z] = count_bounds(b, 1, n, eps);
  const long lo = std::max<long>(0, clamp_bound(lo_z));
  const long hi = std::min<long>(static_cast<long>(n), clamp_bound(hi_z));
  const Integer total = power(Integer(b), n);
  if (lo > hi) return total;

  // ways[m]: sequences of length m over the digits placed so far, each
  // digit's count inside [lo, hi].
  std::vector<Integer> ways(n + 1, Integer(0));
  ways[0] = 1;
  std::vector<Integer> next(n + 1);
  std::vector<Integer> binom_row;
  for (unsigned d = 0; d < b; ++d) {
    std::fill(next.begin(), next.end(), Integer(0));
    for (unsigned long m = 0; m <= n; ++m) {
      Integer acc = 0;
      Integer binom;
      for (long c = lo; c <= hi && static_cast<unsigned long>(c) <= m; ++c) {
        if (ways[m - c] == 0) continue;
        mpz_bin_uiui(binom.get_mpz_t(), m, static_cast<unsigned long>(c));
        acc += binom * ways[m - c];
      }
      next[m] = acc;
    }
    ways.swap(next);
  }
  return total - ways[n];
}

Integer tail_sum(unsigned long b, unsigned long total, long long lower_max, long long upper_min) {
  if (b < 2) throw DomainError("tail_sum: base must be >= 2");
  const Integer bm1(b - 1);
  Integer sum = 0;
  // Lower tail upward from p(N, 0) = (b-1)^N.
  if (lower_max >= 0) {
    const unsigned long last = static_cast<unsigned long>(std::min<long long>(lower_max, static_cast<long long>(total)));
    Integer p = power(bm1, total);
    for (unsigned long j = 0;; ++j) {
      sum += p;
      if (j == last) break;
      // p(N, j+1) = p(N, j) (N - j) / ((j + 1)(b - 1))
      p *= total - j;
      mpz_divexact_ui(p.get_mpz_t(), p.get_mpz_t(), (j + 1) * (b - 1));
    }
  }
  // Upper tail downward from p(N, N) = 1.
  if (upper_min <= static_cast<long long>(total)) {
    const unsigned long first = static_cast<unsigned long>(std::max<long long>(upper_min, 0));
    Integer p = 1;
    for (unsigned long j = total;; --j) {
      sum += p;
      if (j == first) break;
      // p(N, j-1) = p(N, j) j (b - 1) / (N - j + 1)
      p *= j;
      p *= bm1;
      mpz_divexact_ui(p.get_mpz_t(), p.get_mpz_t(), total - j + 1);
    }
  }
  return sum;
}

namespace {

// floor(v * 2^prec) for v >= 0.
Integer scaled_floor(const Rational& v, std::size_t prec) {
  Integer num = v.get_num();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), prec);
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), v.get_den_mpz_t());
  return out;
}

// Lower bound of base^(2^squarings) as D / 2^prec; base >= 0.
Integer dyadic_power_floor(const Rational& base, std::size_t squarings, std::size_t prec) {
  Integer d = scaled_floor(base, prec);
  for (std::size_t s = 0; s < squarings; ++s) {
    d *= d;
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), prec);
  }
  return d;
}

Rational dyadic(const Integer& scaled, std::size_t prec) {
  Integer den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), prec);
  Rational out(scaled, den);
  out.canonicalize();
  return out;
}

}  // namespace

BoundCheck compare_with_exponential(const Integer& lhs, const Integer& coeff, const Rational& t,
                                    std::size_t precision_cap, std::size_t initial_precision) {
  if (t < 0) throw DomainError("compare_with_exponential: t must be non-negative");
  BoundCheck out;
  out.lhs = lhs;

  // m = 2^p >= 2t keeps 1 - t/m in [1/2, 1].
  std::size_t p = 1;
  while (Rational(power(Integer(2), p)) < 2 * t) ++p;
  p += 4;
  const double t_estimate = t.get_d();
  std::size_t prec = initial_precision != 0
                         ? initial_precision
                         : 64 + p + static_cast<std::size_t>(std::ceil(1.5 * t_estimate));

  for (;;) {
    if (prec > precision_cap) {
      out.verdict = Verdict::kInconclusive;
      return out;
    }
    const Rational m(power(Integer(2), p));
    out.precision_used = prec;
    out.squarings = p;

    const Integer lower = dyadic_power_floor(1 - t / m, p, prec);
    Integer scaled_lhs = lhs;
    mpz_mul_2exp(scaled_lhs.get_mpz_t(), scaled_lhs.get_mpz_t(), prec);
    out.rhs_lower_bound = Rational(coeff) * dyadic(lower, prec);
    if (scaled_lhs <= coeff * lower) {
      out.verdict = Verdict::kTrue;
      return out;
    }

    // (1 + t/m)^m <= e^t, so e^{-t} <= 2^prec / W.
    const Integer grown = dyadic_power_floor(1 + t / m, p, prec);
    Integer scaled_coeff = coeff;
    mpz_mul_2exp(scaled_coeff.get_mpz_t(), scaled_coeff.get_mpz_t(), prec);
    Rational upper(scaled_coeff, grown);
    upper.canonicalize();
    out.rhs_upper_bound = upper;
    if (lhs * grown > scaled_coeff) {
      out.verdict = Verdict::kFalse;
      return out;
    }
    p += 4;
    prec *= 2;
  }
}

namespace {

// eps^3 * n >= scale, i.e. eps >= (scale / n)^{1/3}.
bool cube_at_least(const Rational& eps, const Integer& n, unsigned long scale) {
  return eps * eps * eps * Rational(n) >= Rational(scale);
}

void append(std::string& notes, const std::string& msg) {
  if (!notes.empty()) notes += "; ";
  notes += msg;
}

}  // namespace

BoundCheck check_k1(unsigned long b, unsigned long n, const Rational& eps, std::size_t precision_cap,
                    std::size_t initial_precision) {
  if (b < 2) throw DomainError("check_k1: base must be >= 2");
  if (n < 1) throw DomainError("check_k1: n must be >= 1");
  require_eps(eps);
  const Rational centre(1, b);
  const Rational len(n);
  // j > (1/b + eps) n  and  j < (1/b - eps) n
  const Integer upper_min = floor_of((centre + eps) * len) + 1;
  const Integer lower_max = ceil_of((centre - eps) * len) - 1;
  const Integer lhs = tail_sum(b, n, lower_max.get_si(), upper_min.get_si());

  const Integer coeff = power(Integer(2), 14) * power(Integer(b), n);
  const Rational t = eps * eps * len / 80;
  BoundCheck out = compare_with_exponential(lhs, coeff, t, precision_cap, initial_precision);

  std::string notes;
  if (Integer(n) < power(Integer(b), 16)) append(notes, "n < b^16");
  if (!cube_at_least(eps, Integer(n), 1)) append(notes, "eps < n^(-1/3)");
  if (eps > Rational(2, b)) append(notes, "eps > 2/b");
  out.precondition_ok = notes.empty();
  out.precondition_note = notes;
  return out;
}

BoundCheck check_bugeaud(unsigned long b, unsigned long n, const Rational& eps, std::size_t precision_cap,
                         std::size_t initial_precision) {
  if (b < 2) throw DomainError("check_bugeaud: base must be >= 2");
  if (n < 1) throw DomainError("check_bugeaud: n must be >= 1");
  require_eps(eps);
  const unsigned long total = b * n;
  const Integer shift = ceil_of(eps * Rational(n));
  // sum_{-n <= j <= -shift} p(bn, n + j) + sum_{shift <= j <= (b-1) n} p(bn, n + j)
  const long long s = shift.get_si();
  const Integer lhs = tail_sum(b, total, static_cast<long long>(n) - s, static_cast<long long>(n) + s);

  const Integer coeff = power(Integer(2), 14) * power(Integer(b), total);
  const Rational t = eps * eps * Rational(n) / Rational(10 * b);
  BoundCheck out = compare_with_exponential(lhs, coeff, t, precision_cap, initial_precision);

  std::string notes;
  if (Integer(n) < power(Integer(b), 15)) append(notes, "n < b^15");
  if (!cube_at_least(eps, Integer(n), 1)) append(notes, "eps < n^(-1/3)");
  if (eps > 1) append(notes, "eps > 1");
  out.precondition_ok = notes.empty();
  out.precondition_note = notes;
  return out;
}

BoundCheck check_epsilonk(unsigned b, unsigned n, const Rational& eps, unsigned k, std::uint64_t budget,
                          std::size_t precision_cap, std::size_t initial_precision) {
  if (b < 2) throw DomainError("check_epsilonk: base must be >= 2");
  if (k < 1 || n < k) throw DomainError("check_epsilonk: requires 1 <= k <= n");
  require_eps(eps);
  const Integer lhs = count_bad_blocks(b, n, eps, k, budget);
  const Integer coeff = power(Integer(2), 15) * Integer(k) * power(Integer(b), n + k);
  const Rational t = eps * eps * Rational(n) / Rational(160 * static_cast<unsigned long>(k));
  BoundCheck out = compare_with_exponential(lhs, coeff, t, precision_cap, initial_precision);

  std::string notes;
  const Integer bk = power(Integer(b), k);
  if (Integer(n) < Integer(k) * (power(Integer(b), 16UL * k) + 1)) append(notes, "n < k (b^(16k) + 1)");
  if (!cube_at_least(eps, Integer(n / k), 8)) append(notes, "eps < 2 floor(n/k)^(-1/3)");
  if (eps > Rational(Integer(2), bk)) append(notes, "eps > 2/b^k");
  out.precondition_ok = notes.empty();
  out.precondition_note = notes;
  return out;
}

}  // namespace qcantor::combinatorics
