#include <doctest.h>

#include <random>

#include "support.hpp"
#include "zeroent/errors.hpp"
#include "zeroent/linalg.hpp"
#include "zeroent/real_interval.hpp"

using namespace zeroent;
using zeroent::testing::random_int_matrix;
using zeroent::testing::random_unimodular;

namespace {

IntPolynomial ipoly(std::initializer_list<long> low_to_high) {
  std::vector<Integer> c;
  for (long x : low_to_high) c.emplace_back(x);
  return IntPolynomial(std::move(c));
}

const IntPolynomial x_minus_1 = ipoly({-1, 1});
const IntPolynomial x2_plus_1 = ipoly({1, 0, 1});

}  // namespace

TEST_CASE("char_poly examples") {
  CHECK(char_poly(IntMatrix::identity(2)) == x_minus_1 * x_minus_1);
  CHECK(char_poly(IntMatrix::from_rows({{0, -1}, {1, 0}})) == x2_plus_1);
  CHECK(char_poly(IntMatrix::from_rows({{1, 1}, {0, 1}})) == x_minus_1 * x_minus_1);
  CHECK(char_poly(IntMatrix::identity(0)) == ipoly({1}));
}

TEST_CASE("char_poly agrees with Bareiss determinants of tI - m") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + trial % 6;
    IntMatrix m = random_int_matrix(rng, n, 9);
    IntPolynomial f = char_poly(m);
    REQUIRE(f.degree() == static_cast<int>(n));
    CHECK(f.is_monic());
    for (long t = -3; t <= 3; ++t) {
      IntMatrix shifted = Integer(t) * IntMatrix::identity(n) - m;
      CHECK(f(Integer(t)) == determinant(shifted));
    }
  }
}

TEST_CASE("Cayley-Hamilton holds exactly") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + trial % 5;
    IntMatrix m = random_int_matrix(rng, n, 20);
    CHECK(evaluate(char_poly(m), m).is_zero());
  }
}

TEST_CASE("char_poly is invariant under unimodular change of basis") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t n = 2 + trial % 5;
    IntMatrix m = random_int_matrix(rng, n, 5);
    IntMatrix u = random_unimodular(rng, n);
    CHECK(char_poly(zeroent::testing::conjugate(m, u)) == char_poly(m));
  }
}

TEST_CASE("minimal_poly examples and divisibility") {
  RatPolynomial x_1 = to_rational(x_minus_1);
  CHECK(minimal_poly(RatMatrix::identity(3)) == x_1);
  CHECK(minimal_poly(to_rational(IntMatrix::from_rows({{0, -1}, {1, 0}}))) == to_rational(x2_plus_1));
  RatMatrix d = RatMatrix::diagonal({1, 1, 2});
  CHECK(minimal_poly(d) == x_1 * RatPolynomial::linear(2));

  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 1 + trial % 5;
    // Repeated eigenvalues make the minimal polynomial a proper divisor.
    IntMatrix base = IntMatrix::diagonal(std::vector<Integer>(n, Integer(trial % 3)));
    IntMatrix m = base + (trial % 2 ? random_int_matrix(rng, n, 1) : IntMatrix(n, n));
    RatMatrix rm = to_rational(m);
    RatPolynomial mp = minimal_poly(rm);
    CHECK(mp.is_monic());
    CHECK(evaluate(mp, rm).is_zero());
    CHECK(divmod(to_rational(char_poly(m)), mp).second.is_zero());
  }
}

TEST_CASE("exterior_power examples") {
  std::mt19937_64 rng(15);
  IntMatrix m = random_int_matrix(rng, 4, 5);
  CHECK(exterior_power(m, 1) == m);
  CHECK(exterior_power(m, 4) == IntMatrix::from_rows({{determinant(m)}}));
  CHECK(exterior_power(m, 0) == IntMatrix::identity(1));
  IntMatrix d = IntMatrix::diagonal({2, 3, 5});
  CHECK(exterior_power(d, 2) == IntMatrix::diagonal({6, 10, 15}));
  CHECK_THROWS_AS(exterior_power(m, 5), PreconditionError);
}

TEST_CASE("exterior_power is multiplicative") {
  std::mt19937_64 rng(16);
  for (std::size_t n = 1; n <= 5; ++n)
    for (int trial = 0; trial < 4; ++trial) {
      IntMatrix a = random_int_matrix(rng, n, 4);
      IntMatrix b = random_int_matrix(rng, n, 4);
      for (std::size_t k = 0; k <= n; ++k)
        CHECK(exterior_power(a * b, k) == exterior_power(a, k) * exterior_power(b, k));
    }
}

TEST_CASE("poly_gcd_and_squarefree examples") {
  auto s1 = poly_gcd_and_squarefree(x_minus_1 * x_minus_1);
  CHECK(s1.gcd_with_derivative == x_minus_1);
  CHECK(s1.squarefree == x_minus_1);

  auto s2 = poly_gcd_and_squarefree(x2_plus_1);
  CHECK(s2.gcd_with_derivative == ipoly({1}));
  CHECK(s2.squarefree == x2_plus_1);

  auto s3 = poly_gcd_and_squarefree(x_minus_1 * x2_plus_1 * x2_plus_1);
  CHECK(s3.gcd_with_derivative == x2_plus_1);
  CHECK(s3.squarefree == x_minus_1 * x2_plus_1);

  CHECK_THROWS_AS(poly_gcd_and_squarefree(IntPolynomial{}), PreconditionError);
}

TEST_CASE("determinant, inverse, nullspace") {
  IntMatrix m = IntMatrix::from_rows({{2, 1}, {7, 4}});
  CHECK(determinant(m) == 1);
  CHECK(unimodular_inverse(m) * m == IntMatrix::identity(2));
  CHECK_THROWS_AS(unimodular_inverse(IntMatrix::from_rows({{2, 0}, {0, 1}})), PreconditionError);
  auto ker = nullspace(to_rational(IntMatrix::from_rows({{1, 1, 0}, {0, 0, 1}})));
  REQUIRE(ker.size() == 1);
  CHECK(ker[0] == RatVector{-1, 1, 0});
  CHECK(rank(RatMatrix::identity(3)) == 3);
}

TEST_CASE("EchelonBasis keeps a reduced basis with pivot coordinates") {
  EchelonBasis basis(3);
  CHECK(basis.insert({1, 2, 3}));
  CHECK(basis.insert({0, 1, 1}));
  CHECK_FALSE(basis.insert({2, 5, 7}));
  CHECK(basis.size() == 2);
  RatVector v{3, 7, 10};
  auto c = basis.coordinates(v);
  RatVector rebuilt(3);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < 3; ++j) rebuilt[j] += c[i] * basis.rows()[i][j];
  CHECK(rebuilt == v);
  CHECK_THROWS(basis.coordinates({0, 0, 1}));
}

TEST_CASE("root isolation of x^2 - 3x + 1") {
  RealInterval r = max_root_modulus(ipoly({1, -3, 1}), Rational(1, 100000));
  CHECK(r.width() <= Rational(1, 100000));
  // (3 + sqrt 5) / 2 = 2.6180339...
  CHECK(r.lo >= Rational(2618, 1000));
  CHECK(r.hi <= Rational(2619, 1000));
  CHECK(r.lo * r.lo - 3 * r.lo + 1 <= 0);
  CHECK(r.hi * r.hi - 3 * r.hi + 1 >= 0);
}

TEST_CASE("root modulus sees complex dominant roots") {
  // x^2 + x + 2: complex roots with |z|^2 = 2.
  RealInterval r = max_root_modulus(ipoly({2, 1, 1}), Rational(1, 1 << 20));
  CHECK(r.lo * r.lo <= 2);
  CHECK(r.hi * r.hi >= 2);
  // Roots of unity only: modulus exactly 1.
  CHECK(max_root_modulus(x2_plus_1, Rational(1, 8)) == RealInterval::point(1));
  CHECK(max_root_modulus(ipoly({0, 0, 1}), Rational(1, 8)) == RealInterval::point(0));
  CHECK_THROWS_AS(max_root_modulus(x2_plus_1, Rational(0)), PreconditionError);
}

TEST_CASE("interval decisions") {
  RealInterval a(1, 2), b(3, 4), c(Rational(3, 2), 5);
  CHECK(less_equal(a, b) == Decision::True);
  CHECK(less_equal(b, a) == Decision::False);
  CHECK(less_equal(a, c) == Decision::Undecided);
  CHECK(less_equal(RealInterval::point(1), RealInterval::point(1)) == Decision::True);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-1.25") == Rational(-5, 4));
  CHECK(parse_rational("7") == 7);
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_integer("1.5"));
  CHECK(to_decimal(Rational(-1, 2), 2) == "-0.50");
}
