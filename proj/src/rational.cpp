#include "eqcoh/rational.hpp"

#include "eqcoh/errors.hpp"

#include <cctype>

namespace eqcoh {

std::string to_string(const Rational& q) {
  if (denominator_of(q) == 1) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  if (i == text.size()) throw ParseError("malformed rational '" + std::string(whole) + "'");
  for (std::size_t j = i; j < text.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(text[j])))
      throw ParseError("malformed rational '" + std::string(whole) + "'");
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return Integer(digits);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto t = trim(text);
  const auto slash = t.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(t, text));
  const Integer num = parse_integer(trim(t.substr(0, slash)), text);
  const Integer den = parse_integer(trim(t.substr(slash + 1)), text);
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }
Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return Integer(0);
  return boost::multiprecision::abs(a / gcd(a, b) * b);
}

}  // namespace eqcoh
