#include "zeroent/number.hpp"

#include <cctype>
#include <stdexcept>

namespace zeroent {

namespace {

bool is_decimal_integer(std::string_view s) {
  std::size_t i = 0;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Integer parse_integer(std::string_view text) {
  if (!is_decimal_integer(text))
    throw std::invalid_argument("not a decimal integer: '" + std::string(text) + "'");
  std::string s(text);
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s, 10);
}

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
      throw std::invalid_argument("signed denominator: '" + std::string(text) + "'");
    Integer den = parse_integer(den_text);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || !is_decimal_integer(frac) || frac[0] == '-' || frac[0] == '+')
      throw std::invalid_argument("malformed decimal: '" + std::string(text) + "'");
    bool negative = !whole.empty() && whole[0] == '-';
    std::string digits(whole);
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    Integer int_part = parse_integer(digits);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Integer frac_part(std::string(frac), 10);
    Integer num = abs(int_part) * scale + frac_part;
    if (negative) num = -num;
    Rational r(num, scale);
    r.canonicalize();
    return r;
  }
  return Rational(parse_integer(text));
}

std::string to_string(const Integer& value) { return value.get_str(10); }

std::string to_string(const Rational& value) { return value.get_str(10); }

std::string to_string(const RatVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

std::string to_decimal(const Rational& value, unsigned digits) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  Integer scaled;
  Integer num = value.get_num() * scale;
  mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), value.get_den_mpz_t());
  bool negative = scaled < 0;
  std::string s = Integer(abs(scaled)).get_str(10);
  if (digits > 0) {
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
  }
  return negative ? "-" + s : s;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

std::vector<Integer> primitive_direction(const RatVector& v) {
  Integer den = 1;
  for (const auto& x : v) den = lcm(den, x.get_den());
  std::vector<Integer> out;
  out.reserve(v.size());
  Integer g = 0;
  for (const auto& x : v) {
    Integer scaled = x.get_num() * (den / x.get_den());
    g = gcd(g, scaled);
    out.push_back(scaled);
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

}  // namespace zeroent
