#include "qcantor/types.hpp"

#include <cctype>
#include <sstream>

namespace qcantor {

namespace {

bool is_decimal_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer integer_from(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Integer parse_integer(std::string_view text) {
  if (!is_decimal_integer(text)) {
    throw MalformedRational("not a decimal integer: '" + std::string(text) + "'");
  }
  return integer_from(text);
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!is_decimal_integer(text)) {
      throw MalformedRational("not a rational 'p/q': '" + std::string(text) + "'");
    }
    return Rational(integer_from(text));
  }
  const auto num = text.substr(0, slash);
  const auto den = text.substr(slash + 1);
  if (!is_decimal_integer(num) || !is_decimal_integer(den) || den[0] == '-') {
    throw MalformedRational("not a rational 'p/q': '" + std::string(text) + "'");
  }
  Integer d = integer_from(den);
  if (d == 0) throw MalformedRational("zero denominator in '" + std::string(text) + "'");
  Rational out(integer_from(num), d);
  out.canonicalize();
  return out;
}

std::string to_string(const Rational& v) {
  if (v.get_den() == 1) return v.get_num().get_str(10);
  return v.get_num().get_str(10) + "/" + v.get_den().get_str(10);
}

std::string to_decimal(const Rational& v, int significant) {
  mpf_class f(0, 64 + static_cast<mp_bitcnt_t>(significant) * 4);
  f = v;
  std::ostringstream os;
  os.precision(significant);
  os << f;
  return os.str();
}

unsigned long to_ulong(const Integer& v, std::string_view what) {
  if (v < 0 || !v.fits_ulong_p()) {
    throw BudgetExceeded(std::string(what) + " does not fit a machine word: " + v.get_str());
  }
  return v.get_ui();
}

}  // namespace qcantor
