#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace zeroent {

using Integer = mpz_class;
using Rational = mpq_class;
using RatVector = std::vector<Rational>;

/// Parses a decimal integer such as "-42". Throws std::invalid_argument.
Integer parse_integer(std::string_view text);

/// Parses "p", "p/q" or a finite decimal "1.25"; the result is canonical.
Rational parse_rational(std::string_view text);

std::string to_string(const Integer& value);
std::string to_string(const Rational& value);
/// "(1,-1/2,0)"
std::string to_string(const RatVector& v);

/// Truncated decimal expansion with `digits` fractional digits (rounded toward -inf).
std::string to_decimal(const Rational& value, unsigned digits);

Integer lcm(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);

/// Scales a rational vector to a primitive integer vector with the same direction.
std::vector<Integer> primitive_direction(const RatVector& v);

}  // namespace zeroent
