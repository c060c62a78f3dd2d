#include "substab/rational.hpp"

#include <cctype>
#include <string>

#include "substab/errors.hpp"

namespace substab {

Rational make_rational(long numerator, long denominator) {
  if (denominator == 0) throw InvalidArgument("rational with zero denominator");
  Rational r(numerator, denominator);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  const std::string trimmed(text.substr(b, e - b));

  const auto slash = trimmed.find('/');
  auto valid_int = [](std::string_view s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  const std::string num = trimmed.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : trimmed.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw ParseError("malformed rational '" + trimmed + "'");

  mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw ParseError("rational '" + trimmed + "' has zero denominator");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

double to_double(const Rational& value) { return value.get_d(); }

}  // namespace substab
