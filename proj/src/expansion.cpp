#include "qcantor/expansion.hpp"

#include <algorithm>

namespace qcantor {

const Integer& DigitPrefix::digit_at(const Position& n) const {
  if (n < start || n > end()) {
    throw DomainError("digit_at: position " + n.get_str() + " outside the held window");
  }
  return digits[Integer(n - start).get_ui()];
}

void DigitPrefix::validate() const {
  if (start < 1) throw DomainError("DigitPrefix: start must be >= 1");
  if (bases.size() != digits.size()) throw DomainError("DigitPrefix: bases and digits differ in length");
  for (std::size_t k = 0; k < digits.size(); ++k) {
    if (bases[k] < 2) {
      throw DomainError("DigitPrefix: base below 2 at position " +
                        Integer(start + static_cast<unsigned long>(k)).get_str());
    }
    if (digits[k] < 0 || digits[k] >= bases[k]) {
      throw DomainError("DigitPrefix: digit " + digits[k].get_str() + " outside [0, " +
                        Integer(bases[k] - 1).get_str() + "] at position " +
                        Integer(start + static_cast<unsigned long>(k)).get_str());
    }
  }
}

Expansion expand_rational(const Rational& x, const BasicSequence& q, std::size_t count) {
  Expansion out;
  out.integer_part = floor_of(x);
  out.prefix.start = 1;
  out.prefix.digits.reserve(count);
  out.prefix.bases.reserve(count);
  // f = rem / den throughout, 0 <= rem < den.
  const Integer& den = x.get_den();
  Integer rem = x.get_num() - out.integer_part * den;
  for (std::size_t n = 1; n <= count; ++n) {
    Integer base = q.base_at(Position(static_cast<unsigned long>(n)));
    Integer scaled = rem * base;
    Integer digit;
    mpz_fdiv_qr(digit.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
    out.prefix.digits.push_back(std::move(digit));
    out.prefix.bases.push_back(std::move(base));
  }
  return out;
}

namespace {

// Horner packing: returns (A, P) with sum E_n / (q_a ... q_n) = A / P over
// the window, P = q_a ... q_b.
std::pair<Integer, Integer> pack(const DigitPrefix& prefix, const BasicSequence& q) {
  Integer packed = 0;
  Integer product = 1;
  for (std::size_t k = 0; k < prefix.digits.size(); ++k) {
    const Position n = prefix.start + static_cast<unsigned long>(k);
    const Integer base = q.base_at(n);
    const Integer& digit = prefix.digits[k];
    if (digit < 0 || digit >= base) {
      throw DomainError("digit " + digit.get_str() + " outside [0, " + Integer(base - 1).get_str() +
                        "] at position " + n.get_str());
    }
    packed = packed * base + digit;
    product *= base;
  }
  return {packed, product};
}

}  // namespace

Rational reconstruct(const Expansion& e, const BasicSequence& q) {
  if (e.prefix.start != 1) throw DomainError("reconstruct: prefix must start at position 1");
  auto [packed, product] = pack(e.prefix, q);
  Rational out(packed, product);
  out.canonicalize();
  return out + Rational(e.integer_part);
}

Rational prefix_value(const DigitPrefix& prefix, const BasicSequence& q) {
  if (prefix.start < 1) throw DomainError("prefix_value: start must be >= 1");
  auto [packed, product] = pack(prefix, q);
  Integer leading = prefix.start > 1 ? base_product(q, 1, prefix.start - 1) : Integer(1);
  Rational out(packed, product * leading);
  out.canonicalize();
  return out;
}

Rational tq(const Rational& x, const BasicSequence& q, const Position& n) {
  if (n < 0) throw DomainError("tq: n must be >= 0");
  const Integer& den = x.get_den();
  const Integer scale = q.prefix_product_mod(n, den);
  Integer num = scale * x.get_num();
  num %= den;
  if (num < 0) num += den;
  Rational out(num, den);
  out.canonicalize();
  return out;
}

std::vector<Rational> qnk_series(const BasicSequence& q, std::size_t k,
                                 std::span<const std::size_t> checkpoints) {
  if (k < 1) throw DomainError("qnk: k must be >= 1");
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end())) {
    throw DomainError("qnk: checkpoints must be increasing");
  }
  std::vector<Rational> out;
  out.reserve(checkpoints.size());
  if (checkpoints.empty()) return out;
  if (checkpoints.front() < 1) throw DomainError("qnk: n must be >= 1");
  const std::size_t last = checkpoints.back();

  std::vector<Integer> bases;
  bases.reserve(last + k);
  for (std::size_t n = 1; n < last + k; ++n) bases.push_back(q.base_at(Position(static_cast<unsigned long>(n))));

  Rational sum = 0;
  auto next = checkpoints.begin();
  for (std::size_t j = 1; j <= last; ++j) {
    Integer window = 1;
    for (std::size_t t = 0; t < k; ++t) window *= bases[j - 1 + t];
    sum += Rational(1, window);
    while (next != checkpoints.end() && *next == j) {
      out.push_back(sum);
      ++next;
    }
  }
  return out;
}

Rational qnk(const BasicSequence& q, std::size_t n, std::size_t k) {
  const std::size_t points[] = {n};
  return qnk_series(q, k, points).front();
}

nlohmann::ordered_json to_json(const Expansion& e) {
  nlohmann::ordered_json j;
  j["E0"] = e.integer_part.get_str();
  j["start"] = e.prefix.start.get_str();
  auto& digits = j["digits"] = nlohmann::ordered_json::array();
  for (const auto& d : e.prefix.digits) digits.push_back(d.get_str());
  auto& bases = j["bases"] = nlohmann::ordered_json::array();
  for (const auto& b : e.prefix.bases) bases.push_back(b.get_str());
  return j;
}

Expansion expansion_from_json(const nlohmann::json& j) {
  auto text = [](const nlohmann::json& v, const char* what) -> std::string {
    if (!v.is_string()) throw DomainError(std::string("expansion JSON: '") + what + "' must be a decimal string");
    return v.get<std::string>();
  };
  if (!j.is_object()) throw DomainError("expansion JSON: expected an object");
  for (const char* key : {"E0", "start", "digits", "bases"}) {
    if (!j.contains(key)) throw DomainError(std::string("expansion JSON: missing '") + key + "'");
  }
  Expansion e;
  e.integer_part = parse_integer(text(j["E0"], "E0"));
  e.prefix.start = parse_integer(text(j["start"], "start"));
  for (const auto& d : j["digits"]) e.prefix.digits.push_back(parse_integer(text(d, "digits")));
  for (const auto& b : j["bases"]) e.prefix.bases.push_back(parse_integer(text(b, "bases")));
  e.prefix.validate();
  return e;
}

}  // namespace qcantor
