#include "currents_lab/rational.hpp"

#include <cctype>

#include "currents_lab/errors.hpp"

namespace currents_lab {

std::string to_string(const Rational& value) { return value.get_str(); }

Rational parse_rational(std::string_view text) {
  std::size_t i = 0;
  auto digits = [&](std::string& out) {
    const std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      out.push_back(text[i++]);
    }
    if (i == start) throw ParseError(i, "expected digits in rational");
  };
  std::string numerator;
  std::string denominator = "1";
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    if (text[i] == '-') numerator.push_back('-');
    ++i;
  }
  digits(numerator);
  if (i < text.size() && text[i] == '/') {
    ++i;
    denominator.clear();
    digits(denominator);
  }
  if (i != text.size()) throw ParseError(i, "trailing characters in rational");
  const mpz_class num(numerator);
  const mpz_class den(denominator);
  if (den == 0) throw ParseError(0, "zero denominator");
  Rational value(num, den);
  value.canonicalize();
  return value;
}

}  // namespace currents_lab
