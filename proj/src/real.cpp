#include "qcantor/real.hpp"

#include <cstdlib>
#include <memory>

namespace qcantor {

Real::Real(mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_zero(value_, 1);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, other.precision());
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() {
  mpfr_clear(value_);
}

std::string Real::to_string(int digits) const {
  std::unique_ptr<char, void (*)(char*)> buf(nullptr, [](char* p) { mpfr_free_str(p); });
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%.*Rg", digits, value_);
  buf.reset(raw);
  return std::string(buf.get());
}

Interval interval_of(const Integer& v, mpfr_prec_t precision) {
  Interval out(precision);
  mpfr_set_z(out.lo.get(), v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(out.hi.get(), v.get_mpz_t(), MPFR_RNDU);
  return out;
}

Interval interval_of(const Rational& v, mpfr_prec_t precision) {
  Interval out(precision);
  mpfr_set_q(out.lo.get(), v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(out.hi.get(), v.get_mpq_t(), MPFR_RNDU);
  return out;
}

Interval add(const Interval& a, const Interval& b) {
  Interval out(a.precision());
  mpfr_add(out.lo.get(), a.lo.get(), b.lo.get(), MPFR_RNDD);
  mpfr_add(out.hi.get(), a.hi.get(), b.hi.get(), MPFR_RNDU);
  return out;
}

Interval sub(const Interval& a, const Interval& b) {
  Interval out(a.precision());
  mpfr_sub(out.lo.get(), a.lo.get(), b.hi.get(), MPFR_RNDD);
  mpfr_sub(out.hi.get(), a.hi.get(), b.lo.get(), MPFR_RNDU);
  return out;
}

Interval mul_nonneg(const Interval& a, const Interval& b) {
  Interval out(a.precision());
  mpfr_mul(out.lo.get(), a.lo.get(), b.lo.get(), MPFR_RNDD);
  mpfr_mul(out.hi.get(), a.hi.get(), b.hi.get(), MPFR_RNDU);
  return out;
}

Interval div_pos(const Interval& a, const Interval& b) {
  Interval out(a.precision());
  mpfr_div(out.lo.get(), a.lo.get(), b.hi.get(), MPFR_RNDD);
  mpfr_div(out.hi.get(), a.hi.get(), b.lo.get(), MPFR_RNDU);
  return out;
}

Interval log(const Interval& a) {
  Interval out(a.precision());
  mpfr_log(out.lo.get(), a.lo.get(), MPFR_RNDD);
  mpfr_log(out.hi.get(), a.hi.get(), MPFR_RNDU);
  return out;
}

Interval exp(const Interval& a) {
  Interval out(a.precision());
  mpfr_exp(out.lo.get(), a.lo.get(), MPFR_RNDD);
  mpfr_exp(out.hi.get(), a.hi.get(), MPFR_RNDU);
  return out;
}

bool common_floor(const Interval& a, Integer& out) {
  if (!mpfr_number_p(a.lo.get()) || !mpfr_number_p(a.hi.get())) return false;
  Integer lo;
  Integer hi;
  mpfr_get_z(lo.get_mpz_t(), a.lo.get(), MPFR_RNDD);
  mpfr_get_z(hi.get_mpz_t(), a.hi.get(), MPFR_RNDD);
  if (lo != hi) return false;
  out = lo;
  return true;
}

long floor_log(unsigned long i) {
  if (i == 0) throw DomainError("floor_log: argument must be positive");
  if (i == 1) return 0;
  // ln i is irrational for i >= 2, so the enclosure eventually separates
  // from every integer.
  for (mpfr_prec_t prec = 64; prec <= default_precision_cap(); prec *= 2) {
    Integer f;
    if (common_floor(log(interval_of(Integer(i), prec)), f)) return f.get_si();
  }
  throw BudgetExceeded("floor_log: precision cap reached");
}

mpfr_prec_t default_precision_cap() {
  static const mpfr_prec_t cap = [] {
    if (const char* env = std::getenv("QCANTOR_PRECISION_CAP")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end != env && *end == '\0' && v >= 64) return static_cast<mpfr_prec_t>(v);
    }
    return static_cast<mpfr_prec_t>(65536);
  }();
  return cap;
}

}  // namespace qcantor
