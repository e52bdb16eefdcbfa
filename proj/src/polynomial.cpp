#include "zeroent/polynomial.hpp"

#include <stdexcept>

namespace zeroent {

RatPolynomial to_rational(const IntPolynomial& p) {
  std::vector<Rational> c(p.coefficients().begin(), p.coefficients().end());
  return RatPolynomial(std::move(c));
}

std::optional<IntPolynomial> to_integer(const RatPolynomial& p) {
  std::vector<Integer> c;
  c.reserve(p.coefficients().size());
  for (const auto& a : p.coefficients()) {
    if (a.get_den() != 1) return std::nullopt;
    c.push_back(a.get_num());
  }
  return IntPolynomial(std::move(c));
}

IntPolynomial primitive_part(const RatPolynomial& p) {
  if (p.is_zero()) return {};
  std::vector<Integer> c = primitive_direction(p.coefficients());
  if (c.back() < 0)
    for (auto& a : c) a = -a;
  return IntPolynomial(std::move(c));
}

IntPolynomial primitive_part(const IntPolynomial& p) { return primitive_part(to_rational(p)); }

RatPolynomial make_monic(const RatPolynomial& p) {
  if (p.is_zero()) return p;
  Rational inv = 1 / p.leading();
  return inv * p;
}

std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& num, const RatPolynomial& den) {
  if (den.is_zero()) throw std::domain_error("polynomial division by zero");
  if (num.degree() < den.degree()) return {RatPolynomial{}, num};
  std::vector<Rational> r = num.coefficients();
  const auto& d = den.coefficients();
  std::size_t dd = d.size() - 1;
  std::vector<Rational> q(r.size() - dd);
  Rational lead_inv = 1 / d.back();
  for (std::size_t k = r.size(); k-- > dd;) {
    if (r[k] == 0) continue;
    Rational factor = r[k] * lead_inv;
    q[k - dd] = factor;
    for (std::size_t j = 0; j <= dd; ++j) r[k - dd + j] -= factor * d[j];
  }
  r.resize(dd);
  return {RatPolynomial(std::move(q)), RatPolynomial(std::move(r))};
}

std::optional<IntPolynomial> divide_exact(const IntPolynomial& f, const IntPolynomial& g) {
  auto [q, r] = divmod(to_rational(f), to_rational(g));
  if (!r.is_zero()) return std::nullopt;
  return to_integer(q);
}

RatPolynomial gcd(RatPolynomial a, RatPolynomial b) {
  while (!b.is_zero()) {
    RatPolynomial r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

RatPolynomial squarefree_part(const RatPolynomial& f) {
  if (f.is_zero()) throw std::domain_error("squarefree part of the zero polynomial");
  RatPolynomial g = gcd(f, f.derivative());
  return make_monic(divmod(f, g).first);
}

namespace {

int sign(const Rational& x) { return sgn(x); }

std::size_t count_variations(const std::vector<int>& signs) {
  std::size_t v = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace

SturmSequence::SturmSequence(const RatPolynomial& p) {
  if (p.is_zero()) throw std::domain_error("Sturm sequence of the zero polynomial");
  chain_.push_back(p);
  if (p.degree() == 0) return;
  chain_.push_back(p.derivative());
  while (true) {
    RatPolynomial r = divmod(chain_[chain_.size() - 2], chain_.back()).second;
    if (r.is_zero()) break;
    // Positive rescaling keeps the sign pattern and tames coefficient growth.
    Rational scale = -1 / abs(r.leading());
    chain_.push_back(scale * r);
  }
}

std::size_t SturmSequence::variations_at(const Rational& x) const {
  std::vector<int> s;
  s.reserve(chain_.size());
  for (const auto& p : chain_) s.push_back(sign(p(x)));
  return count_variations(s);
}

std::size_t SturmSequence::variations_at_infinity() const {
  std::vector<int> s;
  s.reserve(chain_.size());
  for (const auto& p : chain_) s.push_back(sign(p.leading()));
  return count_variations(s);
}

std::size_t SturmSequence::count_roots(const Rational& a, const Rational& b) const {
  if (b < a) return 0;
  return variations_at(a) - variations_at(b);
}

std::size_t SturmSequence::count_roots_above(const Rational& a) const {
  return variations_at(a) - variations_at_infinity();
}

Rational root_bound(const RatPolynomial& p) {
  if (p.degree() < 1) return 1;
  Rational m = 0;
  const Rational& lead = p.leading();
  for (int k = 0; k < p.degree(); ++k) {
    Rational r = abs(p.coeff(static_cast<std::size_t>(k)) / lead);
    if (r > m) m = r;
  }
  return m + 1;
}

}  // namespace zeroent
