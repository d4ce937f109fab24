#include "qcantor/counter_rng.hpp"

namespace qcantor {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, const Integer& key) {
  std::uint64_t h = splitmix64(seed);
  const std::size_t limbs = mpz_size(key.get_mpz_t());
  h = splitmix64(h ^ static_cast<std::uint64_t>(limbs));
  for (std::size_t k = 0; k < limbs; ++k) {
    h = splitmix64(h ^ static_cast<std::uint64_t>(mpz_getlimbn(key.get_mpz_t(), k)));
  }
  if (key < 0) h = splitmix64(~h);
  stream_ = h;
}

std::uint64_t CounterRng::word(std::uint64_t counter) const {
  return splitmix64(stream_ + 0x632be59bd9b4e019ULL * (counter + 1));
}

Integer CounterRng::uniform_below(const Integer& bound) const {
  if (bound <= 0) throw DomainError("uniform_below: bound must be positive");
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  std::uint64_t counter = 0;
  for (;;) {
    Integer candidate = 0;
    for (std::size_t w = 0; w < words; ++w) {
      candidate <<= 64;
      const std::uint64_t v = word(counter++);
      candidate += Integer(static_cast<unsigned long>(v));
    }
    mpz_fdiv_r_2exp(candidate.get_mpz_t(), candidate.get_mpz_t(), bits);
    if (candidate < bound) return candidate;
  }
}

}  // namespace qcantor
