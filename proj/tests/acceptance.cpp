// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only if
// every criterion passes.

#include <chrono>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qcantor/combinatorics.hpp"
#include "qcantor/construction.hpp"
#include "qcantor/counter_rng.hpp"
#include "qcantor/stats.hpp"
#include "qcantor/transforms.hpp"

using namespace qcantor;
namespace cons = qcantor::construction;
namespace comb = qcantor::combinatorics;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

// Seeded draws for the random trials; the stream index keeps trials apart.
Integer draw(std::uint64_t seed, unsigned long stream, const Integer& bound) {
  return CounterRng(seed, Integer(stream)).uniform_below(bound);
}

Outcome round_trip() {
  const auto& q = cons::constructed_q();
  const Integer p20 = base_product(q, 1, 20);
  for (unsigned long t = 0; t < 1000; ++t) {
    // Denominator q_1...q_m for a random m <= 20 (divides q_1...q_20).
    const unsigned long m = 1 + draw(1, 2 * t, 20).get_ui();
    const Integer den = base_product(q, 1, m);
    Rational x(draw(1, 2 * t + 1, den), den);
    x.canonicalize();
    if (p20 % x.get_den() != 0) return fail("denominator does not divide q_1...q_20");
    if (reconstruct(expand_rational(x, q, 20), q) != x) return fail("mismatch at x = " + to_string(x));
  }
  return {true, "1000 rationals"};
}

Outcome p_count_oracle() {
  unsigned long checked = 0;
  for (unsigned b = 2; b <= 3; ++b) {
    for (unsigned n = 0; n <= 10; ++n) {
      for (unsigned k = 0; k <= n; ++k) {
        ++checked;
        if (comb::p_count(b, n, k) != oracle::p_count(b, n, k)) {
          return fail("b=" + std::to_string(b) + " n=" + std::to_string(n) + " k=" + std::to_string(k));
        }
      }
    }
  }
  return {true, std::to_string(checked) + " cases, 0 mismatches"};
}

Outcome bad_block_oracle() {
  unsigned long checked = 0;
  for (unsigned b = 2; b <= 3; ++b) {
    for (unsigned n = 1; n <= 14; ++n) {
      for (const Rational eps : {Rational(1, 16), Rational(1, 8), Rational(1, 4)}) {
        ++checked;
        if (comb::count_bad_k1(b, n, eps) != comb::count_bad_blocks(b, n, eps, 1)) {
          return fail("b=" + std::to_string(b) + " n=" + std::to_string(n) + " eps=" + to_string(eps));
        }
      }
    }
  }
  return {true, std::to_string(checked) + " cases exact"};
}

const std::vector<Rational>& eps_grid() {
  static const std::vector<Rational> grid{Rational(1, 32), Rational(1, 16), Rational(1, 8),
                                          Rational(1, 4),  Rational(1, 2),  Rational(1)};
  return grid;
}

Outcome lemma(const std::function<comb::BoundCheck(const Rational&)>& check) {
  std::string detail;
  for (const auto& eps : eps_grid()) {
    const auto c = check(eps);
    if (c.verdict != comb::Verdict::kTrue) return fail("eps=" + to_string(eps) + " -> " + comb::to_string(c.verdict));
    detail += to_string(eps) + ":TRUE@" + std::to_string(c.precision_used) + "b ";
  }
  detail.pop_back();
  return {true, detail};
}

Outcome eta_self_consistency() {
  const auto& q = cons::constructed_q();
  constexpr std::size_t kCount = 10000;
  EtaOracle eta;
  Expansion e;
  e.integer_part = 0;
  e.prefix = eta.window(1, kCount);
  const Rational x = reconstruct(e, q);
  const auto again = expand_rational(x, q, kCount);
  for (std::size_t n = 0; n < kCount; ++n) {
    if (again.prefix.digits[n] != cons::eta_digit(n + 1)) return fail("position " + std::to_string(n + 1));
  }
  const std::vector<long> hand{0, 2, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2, 0, 0, 0, 6, 6, 6};
  for (std::size_t n = 0; n < hand.size(); ++n) {
    if (cons::eta_digit(n + 1) != hand[n]) return fail("hand-derived digit " + std::to_string(n + 1));
  }
  return {true, "10^4 positions + first 18 digits"};
}

Outcome rational_add() {
  const auto& q = cons::constructed_q();
  EtaOracle eta;
  struct Case {
    Rational s;
    unsigned long stated;
  };
  std::string detail;
  for (const auto& c : {Case{Rational(1, 8), 3}, Case{Rational(1, 6), 13}, Case{Rational(5, 12), 13}}) {
    const auto horizon = denominator_horizon(c.s, q, 1000);
    if (!horizon) return fail("no horizon for s=" + to_string(c.s));
    // Containment in [1, N] for the computed N, which is at most the stated one.
    if (*horizon > c.stated) return fail("computed N above the stated N for s=" + to_string(c.s));
    const auto diff = diff_positions(AffineMap(1, c.s), eta, 10 * c.stated);
    for (const auto& p : diff) {
      if (p < 1 || p > *horizon) return fail("s=" + to_string(c.s) + " differs at " + p.get_str());
    }
    detail += "s=" + to_string(c.s) + ":N=" + horizon->get_str() + ",diffs=" + std::to_string(diff.size()) + " ";
  }
  detail.pop_back();
  return {true, detail};
}

// Mixed-radix digits of `value` over q_start..q_{start+len-1}, most
// significant first.
DigitPrefix unpack(const Integer& value, const Position& start, std::size_t len, const BasicSequence& q) {
  DigitPrefix out;
  out.start = start;
  out.digits.resize(len);
  out.bases.resize(len);
  Integer v = value;
  for (std::size_t t = len; t-- > 0;) {
    const Integer base = q.base_at(start + static_cast<unsigned long>(t));
    out.bases[t] = base;
    out.digits[t] = v % base;
    v /= base;
  }
  return out;
}

Outcome rational_mult() {
  const auto& q = cons::constructed_q();
  for (unsigned long t = 0; t < 200; ++t) {
    const Position start = 1 + draw(8, 5 * t, 2900);
    const std::size_t len = 1 + draw(8, 5 * t + 1, 12).get_ui();
    const Integer capacity = base_product(q, start, start + static_cast<unsigned long>(len) - 1);
    Integer num = 1 + draw(8, 5 * t + 2, 9);
    const Integer den = 1 + draw(8, 5 * t + 3, 9);
    if (draw(8, 5 * t + 4, 2) == 1) num = -num;
    Rational r(num, den);
    r.canonicalize();
    // Admissible: r E in Z and 0 <= r E < capacity. For r < 0 only E = 0 works.
    Integer packed = 0;
    if (r > 0) {
      // E = den u with E < capacity and r E = num u < capacity.
      const Integer cap_u = (capacity - 1) / std::max(r.get_num(), r.get_den());
      packed = r.get_den() * draw(9, t, cap_u + 1);
    }
    const DigitPrefix block = unpack(packed, start, len, q);
    const DigitPrefix image = mult_block(block, q, r);
    if (prefix_value(image, q) != r * prefix_value(block, q)) {
      return fail("trial " + std::to_string(t) + " r=" + to_string(r));
    }
  }
  return {true, "200 pairs"};
}

Outcome moran() {
  for (unsigned long m = 0; m < 10000; ++m) {
    if (cons::phi_alpha(cons::phi_alpha_inv(m)) != m) return fail("Phi round trip at " + std::to_string(m));
  }
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto prefix = cons::theta_sample(seed, cons::first_sampleable_position(), 2000);
    if (!cons::theta_contains(prefix).contains) return fail("sample " + std::to_string(seed) + " rejected");
    for (std::size_t k = 0; k < prefix.size(); k += 37) {
      DigitPrefix mutated = prefix;
      mutated.digits[k] = (mutated.digits[k] + 1) % mutated.bases[k];
      if (cons::theta_contains(mutated).contains) {
        return fail("mutation accepted at " + Position(prefix.start + static_cast<unsigned long>(k)).get_str());
      }
    }
  }
  // First large-base position of each region: eta's digit i! is in I_i
  // exactly from i = 8 on.
  unsigned long minimal = 0;
  for (cons::Index i = 2; i <= 12; ++i) {
    bool all_in = true;
    for (unsigned long copy_run = 0; copy_run < 3; ++copy_run) {
      const Position n = cons::region_offset(i) + cons::n_of(i) + 1 + copy_run * 2 * cons::n_of(i);
      all_in = all_in && cons::v_of(n).contains(cons::eta_digit(n));
    }
    if (all_in && minimal == 0) minimal = i;
    if (!all_in && minimal != 0) return fail("eta leaves V(n) again at i=" + std::to_string(i));
  }
  // A sweep over the first copy of X_8 (small and large bases).
  const Position first8 = cons::region_offset(8) + 1;
  const auto window = EtaOracle().window(first8, 4 * 64 * 8);
  const auto check8 = cons::theta_contains(window);
  if (!check8.contains) return fail("eta outside V(n) at " + check8.first_violation->get_str());
  if (minimal != 8) return fail("minimal i is " + std::to_string(minimal));
  return {true, "Phi 10^4, 5 samples, minimal i = 8"};
}

Outcome dimension() {
  std::string detail;
  for (cons::Index i : {20UL, 50UL, 100UL}) {
    const Interval ratio = cons::dim_ratio(i);
    const mpfr_prec_t p = ratio.precision();
    const Interval threshold =
        sub(interval_of(Integer(1), p), div_pos(interval_of(Integer(2), p), log(interval_of(Integer(i), p))));
    if (mpfr_cmp(ratio.lo.get(), threshold.hi.get()) < 0) return fail("i=" + std::to_string(i));
    detail += std::to_string(i) + ":" + ratio.lo.to_string(6) + ">=" + threshold.hi.to_string(6) + " ";
  }
  detail.pop_back();
  return {true, detail};
}

Outcome distribution_witness() {
  const Position base = cons::region_offset(8);
  const Integer length = cons::region_length(8);
  EtaOracle eta;
  std::vector<Position> positions;
  for (unsigned long t = 0; t < 1000; ++t) positions.push_back(base + 1 + draw(11, t, length));
  const auto ratios = stats::digit_ratio_seq(eta, positions);
  const Rational target(1, 40320);
  unsigned long large = 0;
  unsigned long at_or_below = 0;
  for (std::size_t t = 0; t < positions.size(); ++t) {
    if (cons::locate(positions[t]).large) {
      ++large;
      if (ratios[t] != target) return fail("large-base ratio " + to_string(ratios[t]));
    }
    if (ratios[t] <= target) ++at_or_below;
  }
  const Rational d = stats::star_discrepancy(ratios);
  // Independent lower bound: the empirical mass on [0, 1/40320] minus the
  // interval's length.
  const Rational floor_bound = Rational(at_or_below, 1000) - target;
  if (d < floor_bound) return fail("discrepancy below the counting bound");
  if (d < Rational(2, 5)) return fail("discrepancy " + to_decimal(d, 6));
  return {true, std::to_string(large) + " large-base samples, D* = " + to_decimal(d, 6)};
}

Outcome segment_stats() {
  EtaOracle eta;
  Rational previous = 2;
  std::string detail;
  for (cons::Index i = 3; i <= 7; ++i) {
    const auto qk = stats::segment_qk(i, 1, 1);
    if (qk.main_gap > previous) return fail("gap increases at i=" + std::to_string(i));
    previous = qk.main_gap;
    const auto copy = oracle::eta_copy(i);
    for (unsigned long d = 0; d < i; ++d) {
      std::uint64_t direct = 0;
      for (auto v : copy) direct += v == d;
      if (stats::segment_count(eta, {Integer(d)}, i, 1) != direct) {
        return fail("count of " + std::to_string(d) + " in X_{" + std::to_string(i) + ",1}");
      }
    }
    detail += to_decimal(qk.main_gap, 3) + " ";
  }
  detail.pop_back();
  return {true, "gaps " + detail};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "round-trip exactness", round_trip},
      {2, "p_count oracle equivalence", p_count_oracle},
      {3, "bad-block oracle equivalence", bad_block_oracle},
      {4, "k1 bound at n=65536",
       [] { return lemma([](const Rational& e) { return comb::check_k1(2, 65536, e); }); }},
      {5, "bugeaud bound at n=32768",
       [] { return lemma([](const Rational& e) { return comb::check_bugeaud(2, 32768, e); }); }},
      {6, "eta self-consistency", eta_self_consistency},
      {7, "rational shift support", rational_add},
      {8, "rational multiplication blocks", rational_mult},
      {9, "Moran machinery", moran},
      {10, "dimension-ratio trend", dimension},
      {11, "distribution-normality failure witness", distribution_witness},
      {12, "segment statistics", segment_stats},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto started = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    if (!o.pass) ++failures;
    std::printf("criterion %2d %-40s %s  %.2fs  %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
