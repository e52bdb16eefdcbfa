#pragma once

#include <optional>
#include <string>

#include "zeroent/number.hpp"
#include "zeroent/polynomial.hpp"

namespace zeroent {

/// Closed interval [lo, hi] with rational endpoints. The only approximate
/// quantity in the library: comparisons on intervals resolve to a Decision
/// that may be Undecided at the interval's current width.
struct RealInterval {
  Rational lo;
  Rational hi;

  RealInterval() = default;
  RealInterval(Rational lo_, Rational hi_);
  static RealInterval point(const Rational& x) { return RealInterval(x, x); }

  Rational width() const { return hi - lo; }
  bool is_point() const { return lo == hi; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }

  friend bool operator==(const RealInterval&, const RealInterval&) = default;
};

enum class Decision { True, False, Undecided };

std::string to_string(Decision d);

/// "[lo, hi]" with `digits` decimals, rounded outward so the printed range still encloses.
std::string to_string(const RealInterval& x, unsigned digits = 6);

/// Decides a <= b from enclosures.
Decision less_equal(const RealInterval& a, const RealInterval& b);

/// Product of two non-negative intervals.
RealInterval multiply_nonnegative(const RealInterval& a, const RealInterval& b);
RealInterval power_nonnegative(const RealInterval& a, unsigned k);

/// Largest positive real root of p, isolated to width at most `width` by
/// Sturm-sequence bisection. nullopt if p has no positive root.
/// Throws PreconditionError when width <= 0 or p is zero.
std::optional<RealInterval> largest_positive_root(const RatPolynomial& p, const Rational& width);

/// Enclosure of max |z| over the complex roots of p (0 for constants).
/// Every squared modulus lambda * conj(lambda) is a root of the polynomial
/// whose roots are the pairwise products lambda_i * lambda_j (i <= j), and the
/// largest positive root of that polynomial is exactly the squared radius;
/// it is built from Newton power sums and isolated in the variable t = |z|.
RealInterval max_root_modulus(const IntPolynomial& p, const Rational& width);

/// 2^-bits as a rational width budget.
Rational width_from_bits(unsigned bits);

}  // namespace zeroent
