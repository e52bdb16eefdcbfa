#include "zeroent/real_interval.hpp"

#include "zeroent/errors.hpp"

namespace zeroent {

RealInterval::RealInterval(Rational lo_, Rational hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (hi < lo) throw PreconditionError("interval with hi < lo");
}

std::string to_string(Decision d) {
  switch (d) {
    case Decision::True: return "holds";
    case Decision::False: return "fails";
    case Decision::Undecided: return "undecided-at-width";
  }
  return "?";
}

std::string to_string(const RealInterval& x, unsigned digits) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  Rational hi = x.hi * scale;
  Integer up;
  mpz_cdiv_q(up.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
  return "[" + to_decimal(x.lo, digits) + ", " + to_decimal(Rational(up, scale), digits) + "]";
}

Decision less_equal(const RealInterval& a, const RealInterval& b) {
  if (a.hi <= b.lo) return Decision::True;
  if (a.lo > b.hi) return Decision::False;
  return Decision::Undecided;
}

RealInterval multiply_nonnegative(const RealInterval& a, const RealInterval& b) {
  if (a.lo < 0 || b.lo < 0) throw PreconditionError("interval product expects non-negative intervals");
  return RealInterval(a.lo * b.lo, a.hi * b.hi);
}

RealInterval power_nonnegative(const RealInterval& a, unsigned k) {
  RealInterval r = RealInterval::point(1);
  for (unsigned i = 0; i < k; ++i) r = multiply_nonnegative(r, a);
  return r;
}

Rational width_from_bits(unsigned bits) {
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, bits);
  return Rational(1, den);
}

std::optional<RealInterval> largest_positive_root(const RatPolynomial& p, const Rational& width) {
  if (width <= 0) throw PreconditionError("width budget must be positive");
  if (p.is_zero()) throw PreconditionError("root isolation of the zero polynomial");
  RatPolynomial q = squarefree_part(p);
  SturmSequence sturm(q);
  Rational lo = 0;
  Rational hi = root_bound(q);
  if (sturm.count_roots(lo, hi) == 0) return std::nullopt;
  // Invariant: the largest positive root lies in (lo, hi].
  if (q(hi) == 0) return RealInterval::point(hi);
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    if (sturm.count_roots(mid, hi) > 0) {
      lo = mid;
    } else {
      hi = mid;
      if (q(hi) == 0) return RealInterval::point(hi);
    }
  }
  return RealInterval(lo, hi);
}

namespace {

/// Power sums s_0..s_count of the roots of a monic polynomial (Newton).
std::vector<Rational> power_sums(const RatPolynomial& monic, std::size_t count) {
  std::size_t d = static_cast<std::size_t>(monic.degree());
  // a[j] is the coefficient of x^(d-j); a[0] = 1.
  std::vector<Rational> a(d + 1);
  for (std::size_t j = 0; j <= d; ++j) a[j] = monic.coeff(d - j);
  std::vector<Rational> s(count + 1);
  s[0] = static_cast<unsigned long>(d);
  for (std::size_t k = 1; k <= count; ++k) {
    Rational acc = 0;
    for (std::size_t j = 1; j <= std::min(k - 1, d); ++j) acc += a[j] * s[k - j];
    if (k <= d) acc += static_cast<unsigned long>(k) * a[k];
    s[k] = -acc;
  }
  return s;
}

/// Monic polynomial of degree D from its power sums S_1..S_D (Newton).
RatPolynomial from_power_sums(const std::vector<Rational>& S, std::size_t D) {
  std::vector<Rational> b(D + 1);  // b[j] is the coefficient of y^(D-j)
  b[0] = 1;
  for (std::size_t k = 1; k <= D; ++k) {
    Rational acc = S[k];
    for (std::size_t j = 1; j < k; ++j) acc += b[j] * S[k - j];
    b[k] = -acc / static_cast<unsigned long>(k);
  }
  std::vector<Rational> c(D + 1);
  for (std::size_t j = 0; j <= D; ++j) c[D - j] = b[j];
  return RatPolynomial(std::move(c));
}

}  // namespace

RealInterval max_root_modulus(const IntPolynomial& p, const Rational& width) {
  if (width <= 0) throw PreconditionError("width budget must be positive");
  if (p.is_zero()) throw PreconditionError("root modulus of the zero polynomial");
  // Zero roots do not affect the maximum unless they are the only roots.
  std::size_t low = 0;
  while (p.coeff(low) == 0) ++low;
  std::vector<Integer> c(p.coefficients().begin() + static_cast<std::ptrdiff_t>(low), p.coefficients().end());
  IntPolynomial f(std::move(c));
  if (f.degree() <= 0) return RealInterval::point(0);
  RatPolynomial monic = squarefree_part(to_rational(f));
  if (monic.degree() == 1) return RealInterval::point(abs(monic.coeff(0)));
  std::size_t d = static_cast<std::size_t>(monic.degree());
  std::size_t D = d * (d + 1) / 2;
  auto s = power_sums(monic, 2 * D);
  std::vector<Rational> S(D + 1);
  for (std::size_t k = 1; k <= D; ++k) S[k] = (s[k] * s[k] + s[2 * k]) / 2;
  RatPolynomial products = from_power_sums(S, D);
  auto root = largest_positive_root(products.compose_square(), width);
  if (!root) throw std::logic_error("pairwise-product polynomial lost its squared-modulus root");
  return *root;
}

}  // namespace zeroent
