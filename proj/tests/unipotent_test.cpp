#include <doctest.h>

#include <random>

#include "support.hpp"
#include "zeroent/errors.hpp"
#include "zeroent/unipotent.hpp"

using namespace zeroent;
using namespace zeroent::testing;

namespace {

const Rational kWidth(1, 1 << 20);

IntMatrix shear(std::size_t n, std::size_t i, std::size_t j) { return IntMatrix::identity(n) + IntMatrix::unit(n, i, j); }

}  // namespace

TEST_CASE("is_unipotent examples") {
  CHECK(is_unipotent(IntMatrix::identity(3)));
  CHECK(is_unipotent(IntMatrix::from_rows({{1, 5}, {0, 1}})));
  CHECK_FALSE(is_unipotent(IntMatrix::from_rows({{0, -1}, {1, 0}})));
  CHECK(is_unipotent(RatMatrix::from_rows({{1, Rational(1, 2)}, {0, 1}})));
}

TEST_CASE("is_unipotent agrees with the cyclotomic classification") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 2 + trial % 5;
    IntMatrix g = trial % 3 == 0 ? conjugate(random_unitriangular(rng, n), random_unimodular(rng, n))
                                 : random_unimodular(rng, n);
    CHECK(is_unipotent(g) == (classify_entropy(g, kWidth).kind == EntropyKind::Unipotent));
  }
}

TEST_CASE("Heisenberg generators are certified") {
  std::vector<IntMatrix> gens{shear(3, 0, 1), shear(3, 1, 2)};
  auto v = certify_unipotent_group(gens);
  REQUIRE(v.certified());
  CHECK(v.certificate().flag_dims == std::vector<std::size_t>{1, 2, 3});
  CHECK(v.certificate().basis_change == RatMatrix::identity(3));
  CHECK(validate_certificate(v.certificate(), gens));

  // The same group in a scrambled basis goes through the kernel flag.
  std::mt19937_64 rng(32);
  IntMatrix u = random_unimodular(rng, 3);
  std::vector<IntMatrix> conj{conjugate(gens[0], u), conjugate(gens[1], u)};
  auto vc = certify_unipotent_group(conj);
  REQUIRE(vc.certified());
  CHECK(vc.certificate().flag_dims == std::vector<std::size_t>{1, 2, 3});
  CHECK(validate_certificate(vc.certificate(), conj));
}

TEST_CASE("single unitriangular generator keeps the identity basis") {
  std::vector<IntMatrix> gens{IntMatrix::from_rows({{1, 2, 3}, {0, 1, 4}, {0, 0, 1}})};
  auto v = certify_unipotent_group(gens);
  REQUIRE(v.certified());
  CHECK(v.certificate().basis_change == RatMatrix::identity(3));
}

TEST_CASE("two opposite shears are rejected with a valid witness") {
  std::vector<IntMatrix> gens{IntMatrix::from_rows({{1, 1}, {0, 1}}), IntMatrix::from_rows({{1, 0}, {1, 1}})};
  auto v = certify_unipotent_group(gens);
  REQUIRE_FALSE(v.certified());
  const auto& w = v.witness();
  CHECK(w.algebra_word.size() >= 2);
  REQUIRE(w.group_word);
  CHECK(w.group_word->word.length() <= 8);
  CHECK_FALSE(is_unipotent(w.group_word->matrix));
  CHECK(validate_witness(w, gens));

  // Tampered witnesses do not validate.
  auto bad = w;
  bad.algebra_product = RatMatrix(2, 2);
  CHECK_FALSE(validate_witness(bad, gens));
}

TEST_CASE("certification is sound on random unitriangular groups") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + trial % 6;
    std::size_t r = 1 + trial % 3;
    std::vector<IntMatrix> gens;
    IntMatrix u = random_unimodular(rng, n);
    for (std::size_t i = 0; i < r; ++i) gens.push_back(conjugate(random_unitriangular(rng, n), u));
    auto v = certify_unipotent_group(gens);
    REQUIRE(v.certified());
    CHECK(validate_certificate(v.certificate(), gens));
  }
}

TEST_CASE("certification status is conjugation invariant") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + trial % 4;
    std::vector<IntMatrix> gens{random_unitriangular(rng, n)};
    // Odd trials add a lower shear, which usually breaks unipotence.
    gens.push_back(trial % 2 ? shear(n, n - 1, 0) : random_unitriangular(rng, n));
    auto v = certify_unipotent_group(gens);
    IntMatrix u = random_unimodular(rng, n);
    std::vector<IntMatrix> conj;
    for (const auto& g : gens) conj.push_back(conjugate(g, u));
    auto vc = certify_unipotent_group(conj);
    CHECK(v.certified() == vc.certified());
    if (vc.certified())
      CHECK(validate_certificate(vc.certificate(), conj));
    else
      CHECK(validate_witness(vc.witness(), conj));
  }
}

TEST_CASE("certification preconditions") {
  CHECK_THROWS_AS(certify_unipotent_group({IntMatrix::identity(2), IntMatrix::identity(3)}), PreconditionError);
  CHECK_THROWS_AS(certify_unipotent_group({IntMatrix(2, 2)}), PreconditionError);
  auto trivial = certify_unipotent_group({}, 8, 2);
  CHECK(trivial.certified());
}

TEST_CASE("power_replacement examples") {
  IntMatrix rot = IntMatrix::from_rows({{0, -1}, {1, 0}});
  CHECK(power_replacement({rot}, 1) == std::vector<IntMatrix>{rot});
  CHECK(power_replacement({rot}, 4) == std::vector<IntMatrix>{IntMatrix::identity(2)});
  CHECK(power_replacement({IntMatrix::from_rows({{1, 1}, {0, 1}})}, 3) ==
        std::vector<IntMatrix>{IntMatrix::from_rows({{1, 3}, {0, 1}})});
  CHECK_THROWS_AS(power_replacement({rot}, 0), PreconditionError);
}

TEST_CASE("unipotent pipeline examples") {
  auto heis = unipotent_pipeline({shear(3, 0, 1), shear(3, 1, 2)}, 3, kWidth);
  CHECK(heis.status == PipelineStatus::Certified);
  CHECK(heis.m_used == 1);
  CHECK(heis.m_effective == 1);

  auto rot = unipotent_pipeline({IntMatrix::from_rows({{0, -1}, {1, 0}})}, 2, kWidth);
  CHECK(rot.status == PipelineStatus::Certified);
  CHECK(rot.m_used == 12);
  CHECK(rot.m_effective == 4);
  CHECK(rot.m_product == 144);
  CHECK(rot.powered.front().is_identity());

  std::mt19937_64 rng(35);
  IntMatrix block = direct_sum<Integer>({companion(cyclotomic_polynomial(3)), IntMatrix::from_rows({{1, 1}, {0, 1}})});
  IntMatrix g = conjugate(block, random_unimodular(rng, 4));
  auto mixed = unipotent_pipeline({g}, 4, kWidth);
  CHECK(mixed.classifications.front().kind == EntropyKind::QuasiUnipotent);
  CHECK(mixed.status == PipelineStatus::Certified);
  CHECK(mixed.m_effective == 3);
  CHECK(validate_certificate(mixed.verdict->certificate(), mixed.powered));

  auto hyp = unipotent_pipeline({companion(IntPolynomial({Integer(1), Integer(-3), Integer(1)}))}, 2, kWidth);
  CHECK(hyp.status == PipelineStatus::Inapplicable);
  REQUIRE(hyp.classifications.size() == 1);
  CHECK(hyp.classifications.front().kind == EntropyKind::PositiveEntropy);
  CHECK_FALSE(hyp.verdict);

  auto pair = unipotent_pipeline({shear(2, 0, 1), shear(2, 1, 0)}, 2, kWidth);
  CHECK(pair.status == PipelineStatus::NotUnipotent);
  CHECK(validate_witness(pair.verdict->witness(), pair.powered));
}

TEST_CASE("word utilities") {
  Word a{{1}}, b{{2}};
  CHECK(to_string(commutator(a, b)) == "g1^-1 g2^-1 g1 g2");
  CHECK(concat(a, inverse(a)).length() == 0);
  WordAlphabet alpha({IntMatrix::from_rows({{0, -1}, {1, 0}})});
  auto ball = word_ball(alpha, 10, 100);
  CHECK(ball.size() == 4);
  CHECK(ball.front().word.length() == 0);
}
