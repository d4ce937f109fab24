#include "qcantor/basic_sequence.hpp"

namespace qcantor {

Integer BasicSequence::prefix_product_mod(const Position& n, const Integer& modulus) const {
  if (modulus <= 0) throw DomainError("prefix_product_mod: modulus must be positive");
  if (n < 0) throw DomainError("prefix_product_mod: negative length");
  Integer acc = 1 % modulus;
  for (Position k = 1; k <= n; ++k) {
    acc = (acc * base_at(k)) % modulus;
  }
  return acc;
}

PeriodicSequence::PeriodicSequence(std::vector<Integer> period) : period_(std::move(period)) {
  if (period_.empty()) throw DomainError("PeriodicSequence: empty period");
  for (const auto& q : period_) {
    if (q < 2) throw DomainError("PeriodicSequence: every base must be >= 2, got " + q.get_str());
  }
}

Integer PeriodicSequence::base_at(const Position& n) const {
  if (n < 1) throw DomainError("base_at: position must be >= 1");
  Integer idx = (n - 1) % static_cast<unsigned long>(period_.size());
  return period_[idx.get_ui()];
}

Integer PeriodicSequence::prefix_product_mod(const Position& n, const Integer& modulus) const {
  if (modulus <= 0) throw DomainError("prefix_product_mod: modulus must be positive");
  if (n < 0) throw DomainError("prefix_product_mod: negative length");
  const unsigned long len = period_.size();
  Integer whole = 1 % modulus;
  for (const auto& q : period_) whole = (whole * q) % modulus;
  Integer cycles = n / len;
  const unsigned long rest = Integer(n % len).get_ui();
  Integer acc;
  mpz_powm(acc.get_mpz_t(), whole.get_mpz_t(), cycles.get_mpz_t(), modulus.get_mpz_t());
  for (unsigned long k = 0; k < rest; ++k) acc = (acc * period_[k]) % modulus;
  return acc;
}

Integer base_product(const BasicSequence& q, const Position& a, const Position& b) {
  if (a < 1 || b < a) throw DomainError("base_product: requires 1 <= a <= b");
  Integer acc = 1;
  for (Position k = a; k <= b; ++k) acc *= q.base_at(k);
  return acc;
}

}  // namespace qcantor
