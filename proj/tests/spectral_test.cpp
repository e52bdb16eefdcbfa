#include <doctest.h>

#include <numeric>
#include <random>

#include "support.hpp"
#include "zeroent/errors.hpp"
#include "zeroent/linalg.hpp"
#include "zeroent/spectral.hpp"

using namespace zeroent;
using namespace zeroent::testing;

namespace {

const Rational kWidth(1, 1 << 20);

std::uint64_t phi_by_counting(std::uint64_t d) {
  std::uint64_t c = 0;
  for (std::uint64_t j = 1; j <= d; ++j)
    if (std::gcd(j, d) == 1) ++c;
  return c;
}

IntPolynomial ipoly(std::initializer_list<long> low_to_high) {
  std::vector<Integer> c;
  for (long x : low_to_high) c.emplace_back(x);
  return IntPolynomial(std::move(c));
}

IntMatrix fibonacci_square() { return companion(ipoly({1, -3, 1})); }

}  // namespace

TEST_CASE("euler_phi matches gcd counting") {
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(6) == 2);
  CHECK(euler_phi(12) == 4);
  for (std::uint64_t d = 1; d <= 500; ++d) CHECK(euler_phi(d) == phi_by_counting(d));
  CHECK_THROWS_AS(euler_phi(0), PreconditionError);
}

TEST_CASE("uniform_exponent examples") {
  auto r1 = uniform_exponent(1);
  CHECK(r1.d_list == std::vector<std::uint64_t>{1, 2});
  CHECK(r1.m_product == 2);
  CHECK(r1.m_lcm == 2);
  auto r2 = uniform_exponent(2);
  CHECK(r2.d_list == std::vector<std::uint64_t>{1, 2, 3, 4, 6});
  CHECK(r2.m_product == 144);
  CHECK(r2.m_lcm == 12);
  auto r4 = uniform_exponent(4);
  CHECK(r4.d_list == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 8, 10, 12});
  CHECK(r4.m_lcm == 120);
  CHECK_THROWS_AS(uniform_exponent(0), PreconditionError);
}

TEST_CASE("uniform_exponent divisibility and completeness") {
  for (std::uint64_t r = 1; r <= 8; ++r) {
    auto u = uniform_exponent(r);
    CHECK(u.m_product % u.m_lcm == 0);
    for (auto d : u.d_list) {
      CHECK(u.m_product % static_cast<unsigned long>(d) == 0);
      CHECK(u.m_lcm % static_cast<unsigned long>(d) == 0);
    }
    for (std::uint64_t d = 1; d <= 2 * r * r; ++d)
      if (std::find(u.d_list.begin(), u.d_list.end(), d) == u.d_list.end()) CHECK(phi_by_counting(d) > r);
  }
}

TEST_CASE("cyclotomic_polynomial examples and degrees") {
  CHECK(cyclotomic_polynomial(1) == ipoly({-1, 1}));
  CHECK(cyclotomic_polynomial(4) == ipoly({1, 0, 1}));
  CHECK(cyclotomic_polynomial(6) == ipoly({1, -1, 1}));
  for (std::uint64_t d = 1; d <= 200; ++d)
    CHECK(cyclotomic_polynomial(d).degree() == static_cast<int>(euler_phi(d)));
  CHECK_THROWS_AS(cyclotomic_polynomial(0), PreconditionError);
}

TEST_CASE("strip_cyclotomic_factors examples") {
  IntPolynomial x1 = ipoly({-1, 1});
  auto s1 = strip_cyclotomic_factors(x1 * x1 * ipoly({1, 0, 1}));
  CHECK(s1.profile == std::vector<CyclotomicFactor>{{1, 2}, {4, 1}});
  CHECK(s1.residual == ipoly({1}));

  auto s2 = strip_cyclotomic_factors(ipoly({-1, -1, 1}));
  CHECK(s2.profile.empty());
  CHECK(s2.residual == ipoly({-1, -1, 1}));

  auto s3 = strip_cyclotomic_factors(x1);
  CHECK(s3.profile == std::vector<CyclotomicFactor>{{1, 1}});

  CHECK_THROWS_AS(strip_cyclotomic_factors(ipoly({1, 2})), PreconditionError);
  CHECK_THROWS_AS(strip_cyclotomic_factors(ipoly({2, 0, 1})), PreconditionError);
}

TEST_CASE("strip_cyclotomic_factors reconstructs the input") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 2 + trial % 6;
    IntMatrix g = random_unimodular(rng, n, 3 * static_cast<int>(n));
    IntPolynomial f = char_poly(g);
    auto split = strip_cyclotomic_factors(f);
    IntPolynomial rebuilt = split.residual;
    for (const auto& c : split.profile) rebuilt = rebuilt * cyclotomic_polynomial(c.order).pow(c.multiplicity);
    CHECK(rebuilt == f);
  }
}

TEST_CASE("classify_entropy examples") {
  auto id = classify_entropy(IntMatrix::identity(3), kWidth);
  CHECK(id.kind == EntropyKind::Unipotent);
  CHECK(*id.quasi_order == 1);

  auto rot = classify_entropy(IntMatrix::from_rows({{0, -1}, {1, 0}}), kWidth);
  CHECK(rot.kind == EntropyKind::QuasiUnipotent);
  CHECK(*rot.quasi_order == 4);
  CHECK(uniform_exponent(2).m_lcm % *rot.quasi_order == 0);

  auto hyp = classify_entropy(fibonacci_square(), Rational(1, 100000));
  CHECK(hyp.kind == EntropyKind::PositiveEntropy);
  REQUIRE(hyp.spectral_radius);
  CHECK(hyp.spectral_radius->lo >= Rational(2618, 1000));
  CHECK(hyp.spectral_radius->hi <= Rational(2619, 1000));
  CHECK_FALSE(hyp.quasi_order);

  CHECK_THROWS_AS(classify_entropy(IntMatrix::diagonal({2, 1}), kWidth), PreconditionError);
}

TEST_CASE("classification invariants") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 2 + trial % 4;
    IntMatrix g = trial % 2 ? random_unimodular(rng, n) : random_unitriangular(rng, n);
    auto c = classify_entropy(g, kWidth);
    bool residual_constant = c.residual.is_constant();
    CHECK((c.kind == EntropyKind::PositiveEntropy) == !residual_constant);
    if (c.kind != EntropyKind::PositiveEntropy) {
      Integer l = 1;
      for (const auto& f : c.cyclotomic_profile) l = lcm(l, Integer(static_cast<unsigned long>(f.order)));
      CHECK(*c.quasi_order == l);
    }
    bool only_ones = std::all_of(c.cyclotomic_profile.begin(), c.cyclotomic_profile.end(),
                                 [](const CyclotomicFactor& f) { return f.order == 1; });
    CHECK((c.kind == EntropyKind::Unipotent) == (only_ones && residual_constant));
    // Independent route.
    CHECK((c.kind != EntropyKind::PositiveEntropy) ==
          power_unipotence_certificate(g, uniform_exponent(n).m_lcm));
    // Conjugation invariance.
    IntMatrix u = random_unimodular(rng, n);
    auto cc = classify_entropy(conjugate(g, u), kWidth);
    CHECK(cc.kind == c.kind);
    CHECK(cc.quasi_order == c.quasi_order);
    CHECK(cc.cyclotomic_profile == c.cyclotomic_profile);
  }
}

TEST_CASE("spectral radius of compound matrices") {
  CHECK(spectral_radius(IntMatrix::identity(3), kWidth) == RealInterval::point(1));
  CHECK(spectral_radius(IntMatrix(2, 2), kWidth) == RealInterval::point(0));
  auto r = spectral_radius(IntMatrix::diagonal({3, -5}), kWidth);
  CHECK(r.contains(5));
  CHECK(r.width() <= kWidth);
}

TEST_CASE("dynamical_degrees examples") {
  for (unsigned n = 1; n <= 3; ++n)
    for (const auto& d : dynamical_degrees(IntMatrix::identity(3), n, kWidth)) CHECK(d == RealInterval::point(1));

  CHECK_THROWS_AS(dynamical_degrees(IntMatrix::diagonal({2, 1, 1}), 2, kWidth), PreconditionError);

  auto d = dynamical_degrees(fibonacci_square(), 2, Rational(1, 100000));
  REQUIRE(d.size() == 3);
  CHECK(d[0] == RealInterval::point(1));
  CHECK(d[1].lo >= Rational(2618, 1000));
  CHECK(d[1].hi <= Rational(2619, 1000));
  CHECK(d[2] == RealInterval::point(1));
}

TEST_CASE("degree inequalities") {
  auto id = check_degree_inequalities(exterior_model({IntMatrix::identity(3)}, 3), kWidth);
  CHECK(id.all_hold());

  // Finite-order and unipotent blocks: every compound eigenvalue is a root of unity.
  IntMatrix qu = direct_sum<Integer>({companion(cyclotomic_polynomial(3)), IntMatrix::from_rows({{1, 1}, {0, 1}})});
  auto rep = exterior_model({qu}, 4);
  auto report = check_degree_inequalities(rep, kWidth);
  CHECK(report.all_hold());
  for (const auto& d : report.degrees[0]) CHECK(d == RealInterval::point(1));

  auto hyp = check_degree_inequalities(exterior_model({fibonacci_square()}, 2), kWidth);
  CHECK(hyp.all_hold());
}

TEST_CASE("degree inequalities in dimension 3 with a hyperbolic block") {
  IntMatrix g = direct_sum<Integer>({fibonacci_square(), IntMatrix::identity(1)});
  auto report = check_degree_inequalities(exterior_model({g}, 3), kWidth);
  CHECK(report.all_hold());
}

TEST_CASE("graded representation validation") {
  std::vector<IntMatrix> gens{IntMatrix::identity(3) + IntMatrix::unit(3, 0, 1),
                              IntMatrix::identity(3) + IntMatrix::unit(3, 1, 2)};
  auto rep = exterior_model(gens, 3);
  CHECK(validate_graded(rep, gens, 7).empty());

  auto broken = rep;
  broken.degrees[2][0] = IntMatrix::identity(2);
  CHECK_FALSE(validate_graded(broken, gens, 7).empty());

  // Degree 2 that ignores a relation: an order-2 generator sent to a unipotent shear.
  std::vector<IntMatrix> flip{IntMatrix::from_rows({{0, 1}, {1, 0}})};
  GradedRepresentation bad;
  bad.n = 3;
  bad.degrees[0] = {IntMatrix::identity(1)};
  bad.degrees[1] = flip;
  bad.degrees[2] = {IntMatrix::from_rows({{1, 1}, {0, 1}})};
  bad.degrees[3] = {IntMatrix::identity(1)};
  CHECK_FALSE(validate_graded(bad, flip, 3).empty());
}
