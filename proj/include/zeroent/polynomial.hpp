#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zeroent/number.hpp"

namespace zeroent {

/// Dense univariate polynomial, coefficients stored lowest degree first.
/// The zero polynomial has no coefficients and degree -1.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;

  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  static Polynomial constant(const T& value) { return Polynomial(std::vector<T>{value}); }

  static Polynomial monomial(const T& coeff, std::size_t degree) {
    std::vector<T> c(degree + 1);
    c[degree] = coeff;
    return Polynomial(std::move(c));
  }

  /// x - root.
  static Polynomial linear(const T& root) { return Polynomial({T(-root), T(1)}); }

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_constant() const noexcept { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  const T& leading() const {
    if (c_.empty()) throw std::domain_error("zero polynomial has no leading coefficient");
    return c_.back();
  }

  T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
  const std::vector<T>& coefficients() const noexcept { return c_; }

  T operator()(const T& x) const {
    T acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<unsigned long>(k);
    return Polynomial(std::move(d));
  }

  /// p(x) -> p(x^2)
  Polynomial compose_square() const {
    if (c_.empty()) return {};
    std::vector<T> d(2 * c_.size() - 1);
    for (std::size_t k = 0; k < c_.size(); ++k) d[2 * k] = c_[k];
    return Polynomial(std::move(d));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) + b.coeff(k);
    return Polynomial(std::move(c));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<T> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) - b.coeff(k);
    return Polynomial(std::move(c));
  }

  friend Polynomial operator-(const Polynomial& a) {
    std::vector<T> c(a.c_);
    for (auto& x : c) x = -x;
    return Polynomial(std::move(c));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(c));
  }

  friend Polynomial operator*(const T& s, const Polynomial& a) {
    std::vector<T> c(a.c_);
    for (auto& x : c) x *= s;
    return Polynomial(std::move(c));
  }

  Polynomial pow(unsigned e) const {
    Polynomial r = constant(T(1));
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  /// Human-readable form, highest degree first, e.g. "x^2 - 3*x + 1".
  std::string to_string(const std::string& var = "x") const {
    if (c_.empty()) return "0";
    std::string s;
    for (int k = degree(); k >= 0; --k) {
      const T& a = c_[static_cast<std::size_t>(k)];
      if (a == 0) continue;
      T mag = abs(a);
      if (s.empty()) {
        if (a < 0) s += "-";
      } else {
        s += a < 0 ? " - " : " + ";
      }
      bool unit = (mag == 1);
      if (k == 0 || !unit) s += mag.get_str();
      if (k > 0) {
        if (!unit) s += "*";
        s += var;
        if (k > 1) s += "^" + std::to_string(k);
      }
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<T> c_;
};

using IntPolynomial = Polynomial<Integer>;
using RatPolynomial = Polynomial<Rational>;

RatPolynomial to_rational(const IntPolynomial& p);

/// Integer polynomial if every coefficient is integral.
std::optional<IntPolynomial> to_integer(const RatPolynomial& p);

/// Clears denominators and content; the leading coefficient is made positive.
IntPolynomial primitive_part(const RatPolynomial& p);
IntPolynomial primitive_part(const IntPolynomial& p);

RatPolynomial make_monic(const RatPolynomial& p);

/// Euclidean division over Q; throws std::domain_error on a zero divisor.
std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& num, const RatPolynomial& den);

/// Quotient f / g in Z[x] when g divides f there, otherwise nullopt.
std::optional<IntPolynomial> divide_exact(const IntPolynomial& f, const IntPolynomial& g);

/// Monic gcd over Q (zero if both inputs are zero).
RatPolynomial gcd(RatPolynomial a, RatPolynomial b);

/// Monic squarefree part over Q: f / gcd(f, f').
RatPolynomial squarefree_part(const RatPolynomial& f);

/// Standard Sturm chain p, p', -rem(...), ... over Q.
class SturmSequence {
 public:
  explicit SturmSequence(const RatPolynomial& p);

  /// Distinct real roots in the half-open interval (a, b].
  std::size_t count_roots(const Rational& a, const Rational& b) const;
  /// Distinct real roots in (a, +inf).
  std::size_t count_roots_above(const Rational& a) const;

 private:
  std::size_t variations_at(const Rational& x) const;
  std::size_t variations_at_infinity() const;

  std::vector<RatPolynomial> chain_;
};

/// Cauchy bound: every complex root has modulus strictly below the result.
Rational root_bound(const RatPolynomial& p);

}  // namespace zeroent
