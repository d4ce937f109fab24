#include "qcantor/construction.hpp"

#include <cmath>
#include <deque>
#include <mutex>

#include "qcantor/counter_rng.hpp"

namespace qcantor::construction {

namespace {

// Largest i^{n_i} (in bits) this build is willing to materialize.
constexpr std::size_t kMaxBlockBits = std::size_t{1} << 27;

Integer compute_ell(Index i, const Integer& n) {
  const unsigned long exponent = to_ulong(n, "n_i");
  const double bits = static_cast<double>(exponent) * std::log2(static_cast<double>(i));
  if (bits > static_cast<double>(kMaxBlockBits)) {
    throw BudgetExceeded("ell_" + std::to_string(i) + " needs i^{n_i} with about " +
                         std::to_string(static_cast<long long>(bits)) + " bits");
  }
  const Integer fact = factorial(i);
  Integer out;
  Integer top = power(Integer(i), exponent);
  Integer below = fact * fact;
  mpz_cdiv_q(out.get_mpz_t(), top.get_mpz_t(), below.get_mpz_t());
  return out;
}

// Compute-once table of per-index parameters and cumulative offsets. A
// single mutex guards growth; entries are never modified after insertion and
// deque keeps references to them stable.
class Layout {
 public:
  static Layout& instance() {
    static Layout layout;
    return layout;
  }

  const ConstructionParams& params(Index i) {
    if (i < 1) throw DomainError("params: i must be >= 1");
    std::lock_guard<std::mutex> lock(mu_);
    grow_locked(i);
    return params_[i - 1];
  }

  const Integer& offset(Index i) {
    if (i < 1) throw DomainError("region_offset: i must be >= 1");
    std::lock_guard<std::mutex> lock(mu_);
    grow_locked(i);
    return offsets_[i - 1];
  }

  const Integer& ell(Index i) {
    std::lock_guard<std::mutex> lock(mu_);
    return ell_locked(i);
  }

 private:
  const Integer& ell_locked(Index i) {
    while (ells_.size() < i) {
      const Index k = ells_.size() + 1;
      ells_.push_back(k == 1 ? Integer(0) : compute_ell(k, n_of(k)));
    }
    return ells_[i - 1];
  }

  void grow_locked(Index i) {
    while (params_.size() < i) {
      const Index k = params_.size() + 1;
      ConstructionParams p;
      p.i = k;
      p.alpha = k;
      p.n = n_of(k);
      p.s = p.n;
      p.t = p.n;
      const Integer fact = factorial(k);
      p.beta = fact * fact;
      p.eps = Real(128);
      if (k == 1) {
        mpfr_set_inf(p.eps.get(), 1);
        p.ell = 0;
        p.L = 0;
      } else {
        mpfr_set_z(p.eps.get(), p.n.get_mpz_t(), MPFR_RNDN);
        mpfr_sqrt(p.eps.get(), p.eps.get(), MPFR_RNDN);
        mpfr_rec_sqrt(p.eps.get(), p.eps.get(), MPFR_RNDN);
        p.ell = ell_locked(k);
        const Integer& next_ell = ell_locked(k + 1);
        Rational ratio(n_of(k + 1) * next_ell, p.n * p.ell);
        ratio.canonicalize();
        p.L = fact * ceil_of(ratio);
      }
      p.upsilon = p.L * p.ell;
      const Integer start = offsets_.empty() ? Integer(0) : offsets_.back() + 2 * params_.back().upsilon * params_.back().n;
      params_.push_back(std::move(p));
      offsets_.push_back(start);
    }
  }

  std::mutex mu_;
  std::deque<ConstructionParams> params_;
  std::deque<Integer> offsets_;
  std::deque<Integer> ells_;
};

Integer period_product_mod(const ConstructionParams& p, const Integer& modulus) {
  Integer a;
  Integer b;
  mpz_powm(a.get_mpz_t(), Integer(p.i).get_mpz_t(), p.n.get_mpz_t(), modulus.get_mpz_t());
  mpz_powm(b.get_mpz_t(), p.beta.get_mpz_t(), p.n.get_mpz_t(), modulus.get_mpz_t());
  return (a * b) % modulus;
}

Integer powm(const Integer& base, const Integer& exponent, const Integer& modulus) {
  Integer out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(), modulus.get_mpz_t());
  return out;
}

const ConstructionParams& require_index(Index i, const char* what) {
  if (i < 2) throw DomainError(std::string(what) + ": i must be >= 2");
  return params(i);
}

}  // namespace

Integer n_of(Index i) {
  if (i < 1) throw DomainError("n_of: i must be >= 1");
  if (i == 1) return 0;
  return power(Integer(i), static_cast<unsigned long>(floor_log(i)));
}

Integer ell_of(Index i) {
  if (i < 2) throw DomainError("ell_of: i must be >= 2");
  return Layout::instance().ell(i);
}

Integer L_of(Index i) {
  if (i < 2) throw DomainError("L_of: i must be >= 2");
  return params(i).L;
}

const ConstructionParams& params(Index i) { return Layout::instance().params(i); }

const Integer& region_offset(Index i) { return Layout::instance().offset(i); }

Integer region_length(Index i) {
  const auto& p = params(i);
  return 2 * p.upsilon * p.n;
}

Location locate(const Position& n) {
  if (n < 1) throw DomainError("position must be >= 1, got " + n.get_str());
  for (Index i = 2;; ++i) {
    const auto& p = params(i);
    const Integer& before = region_offset(i);
    const Integer length = 2 * p.upsilon * p.n;
    if (n > before + length) continue;
    Location loc;
    loc.i = i;
    const Integer off = n - before - 1;
    const Integer copy_len = 2 * p.n * p.ell;
    const Integer period = 2 * p.n;
    loc.copy = off / copy_len + 1;
    const Integer within = off % copy_len;
    loc.run = within / period;
    loc.offset = within % period;
    loc.large = loc.offset >= p.n;
    return loc;
  }
}

std::vector<Integer> small_block(Index i, const Integer& z) {
  const auto& p = require_index(i, "small_block");
  if (z < 0 || z >= p.ell) {
    throw DomainError("small_block: z must lie in [0, ell_" + std::to_string(i) + ")");
  }
  const unsigned long len = to_ulong(p.n, "n_i");
  std::vector<Integer> digits(len, Integer(0));
  Integer value = z * factorial(i);
  for (unsigned long k = len; k-- > 0 && value != 0;) {
    Integer digit;
    mpz_fdiv_qr_ui(value.get_mpz_t(), digit.get_mpz_t(), value.get_mpz_t(), i);
    digits[k] = digit;
  }
  return digits;
}

Integer small_block_digit(Index i, const Integer& z, const Integer& d) {
  const auto& p = require_index(i, "small_block_digit");
  if (z < 0 || z >= p.ell) {
    throw DomainError("small_block_digit: z must lie in [0, ell_" + std::to_string(i) + ")");
  }
  if (d < 0 || d >= p.n) throw DomainError("small_block_digit: digit index outside [0, n_i)");
  const unsigned long shift = to_ulong(p.n - 1 - d, "digit shift");
  Integer scale = power(Integer(i), shift);
  Integer value = z * factorial(i) / scale;
  return value % i;
}

Integer ConstructedSequence::base_at(const Position& n) const {
  const Location loc = locate(n);
  return loc.large ? params(loc.i).beta : Integer(loc.i);
}

Integer ConstructedSequence::prefix_product_mod(const Position& n, const Integer& modulus) const {
  if (modulus <= 0) throw DomainError("prefix_product_mod: modulus must be positive");
  if (n < 0) throw DomainError("prefix_product_mod: negative length");
  Integer acc = 1 % modulus;
  Integer remaining = n;
  for (Index i = 2; remaining > 0; ++i) {
    const auto& p = params(i);
    const Integer per_period = period_product_mod(p, modulus);
    const Integer length = 2 * p.upsilon * p.n;
    if (remaining >= length) {
      acc = acc * powm(per_period, p.upsilon, modulus) % modulus;
      remaining -= length;
      continue;
    }
    const Integer period = 2 * p.n;
    acc = acc * powm(per_period, remaining / period, modulus) % modulus;
    const Integer rest = remaining % period;
    if (rest <= p.n) {
      acc = acc * powm(Integer(i), rest, modulus) % modulus;
    } else {
      acc = acc * powm(Integer(i), p.n, modulus) % modulus;
      acc = acc * powm(p.beta, rest - p.n, modulus) % modulus;
    }
    remaining = 0;
  }
  return acc;
}

const ConstructedSequence& constructed_q() {
  static const ConstructedSequence q;
  return q;
}

Integer eta_digit(const Position& n) {
  const Location loc = locate(n);
  if (loc.large) return factorial(loc.i);
  return small_block_digit(loc.i, loc.run, loc.offset);
}

SegmentAddress segment_bounds(Index i, const Integer& j) {
  const auto& p = require_index(i, "segment_bounds");
  if (j < 1 || j > p.L) {
    throw DomainError("segment_bounds: j must lie in [1, L_" + std::to_string(i) + "]");
  }
  const Integer copy_len = 2 * p.n * p.ell;
  SegmentAddress out;
  out.i = i;
  out.j = j;
  out.first = region_offset(i) + (j - 1) * copy_len + 1;
  out.last = out.first + copy_len - 1;
  return out;
}

Position phi_alpha(const MoranIndex& t) {
  const auto& p = require_index(t.i, "phi_alpha");
  if (t.c < 0 || t.c >= p.upsilon || t.d < 0 || t.d >= p.s) {
    throw DomainError("phi_alpha: triple outside U (need 0 <= c < upsilon_i, 0 <= d < s_i)");
  }
  // sum_{j<i} upsilon_j s_j is half the region offset since s_j = t_j.
  return region_offset(t.i) / 2 + t.c * p.s + t.d;
}

MoranIndex phi_alpha_inv(const Position& m) {
  if (m < 0) throw DomainError("phi_alpha_inv: index must be >= 0");
  for (Index i = 2;; ++i) {
    const auto& p = params(i);
    const Integer before = region_offset(i) / 2;
    if (m >= before + p.upsilon * p.s) continue;
    const Integer rel = m - before;
    return MoranIndex{i, rel / p.s, rel % p.s};
  }
}

Position g_of(const Position& m) {
  const MoranIndex t = phi_alpha_inv(m);
  const auto& p = params(t.i);
  return region_offset(t.i) + t.c * (p.s + p.t) + t.d;
}

Integer f_digit(const Position& m) {
  const MoranIndex t = phi_alpha_inv(m);
  const auto& p = params(t.i);
  return small_block_digit(t.i, t.c % p.ell, t.d);
}

bool DigitSet::contains(const Integer& d) const {
  if (singleton) return d == *singleton;
  return large && large->contains(d);
}

DigitSet v_of(const Position& n) {
  const Location loc = locate(n);
  DigitSet out;
  out.i = loc.i;
  if (loc.large) {
    out.large = i_descriptor(loc.i);
    return out;
  }
  const auto& p = params(loc.i);
  const Integer c = (loc.copy - 1) * p.ell + loc.run;
  out.singleton = f_digit(phi_alpha(MoranIndex{loc.i, c, loc.offset}));
  return out;
}

IDescriptor i_descriptor(Index i, mpfr_prec_t precision_cap) {
  if (i < 2) throw DomainError("i_descriptor: i must be >= 2");
  // Memoized per index; the certified floor does not depend on the cap once
  // found.
  static std::mutex mu;
  static std::deque<std::optional<IDescriptor>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (cache.size() > i && cache[i]) return *cache[i];
  }
  const Integer fact = factorial(i);
  const Integer beta = fact * fact;
  IDescriptor out;
  out.modulus = factorial(Integer(sqrt(Integer(i))).get_ui());
  bool found = false;
  for (mpfr_prec_t prec = 64; prec <= precision_cap; prec *= 2) {
    const Interval log_beta = log(interval_of(beta, prec));
    const Interval log_i = log(interval_of(Integer(i), prec));
    const Interval exponent = sub(log_beta, div_pos(log_beta, log_i));
    if (common_floor(exp(exponent), out.bound)) {
      out.precision_used = prec;
      found = true;
      break;
    }
  }
  if (!found) {
    throw BudgetExceeded("i_descriptor: floor of beta_" + std::to_string(i) +
                         "^(1-1/ln i) not certified within the precision cap (INCONCLUSIVE)");
  }
  std::lock_guard<std::mutex> lock(mu);
  if (cache.size() <= i) cache.resize(i + 1);
  cache[i] = out;
  return out;
}

Interval dim_ratio(Index i, mpfr_prec_t precision) {
  if (i < 3) throw DomainError("dim_ratio: i must be >= 3");
  const IDescriptor desc = i_descriptor(i);
  const Integer card = desc.cardinality();
  if (card < 1) throw DomainError("dim_ratio: I_" + std::to_string(i) + " is empty");
  const Integer fact = factorial(i);
  return div_pos(log(interval_of(card, precision)), log(interval_of(Integer(fact * fact), precision)));
}

ThetaCheck theta_contains(const DigitPrefix& prefix) {
  if (prefix.start < 1) throw DomainError("theta_contains: positions start at 1");
  if (!prefix.bases.empty() && prefix.bases.size() != prefix.digits.size()) {
    throw DomainError("theta_contains: bases and digits differ in length");
  }
  ThetaCheck out;
  for (std::size_t k = 0; k < prefix.digits.size(); ++k) {
    const Position n = prefix.start + static_cast<unsigned long>(k);
    if (!prefix.bases.empty() && prefix.bases[k] != constructed_q().base_at(n)) {
      throw DomainError("theta_contains: base at position " + n.get_str() + " is not the constructed Q");
    }
    if (!v_of(n).contains(prefix.digits[k])) {
      out.contains = false;
      out.first_violation = n;
      return out;
    }
  }
  return out;
}

Integer theta_digit(std::uint64_t seed, const Position& n) {
  const Location loc = locate(n);
  if (!loc.large) return small_block_digit(loc.i, loc.run, loc.offset);
  const IDescriptor desc = i_descriptor(loc.i);
  const Integer card = desc.cardinality();
  if (card == 0) {
    throw DomainError("theta_sample: I_" + std::to_string(loc.i) + " is empty at position " + n.get_str() +
                      "; Theta has no digit there");
  }
  return desc.member(CounterRng(seed, n).uniform_below(card));
}

DigitPrefix theta_sample(std::uint64_t seed, const Position& start, std::size_t count) {
  if (start < 1) throw DomainError("theta_sample: start must be >= 1");
  DigitPrefix out;
  out.start = start;
  out.digits.reserve(count);
  out.bases.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const Position n = start + static_cast<unsigned long>(k);
    out.digits.push_back(theta_digit(seed, n));
    out.bases.push_back(constructed_q().base_at(n));
  }
  return out;
}

Position first_sampleable_position() { return region_offset(3) + 1; }

}  // namespace qcantor::construction
