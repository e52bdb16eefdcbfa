#pragma once

// Seeded generators shared by the unit and acceptance suites.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "zeroent/cone.hpp"
#include "zeroent/linalg.hpp"
#include "zeroent/matrix.hpp"
#include "zeroent/spectral.hpp"

namespace zeroent::testing {

inline long uniform_int(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline IntMatrix random_int_matrix(std::mt19937_64& rng, std::size_t n, long bound) {
  std::vector<Integer> e(n * n);
  for (auto& x : e) x = uniform_int(rng, -bound, bound);
  return IntMatrix(n, n, std::move(e));
}

/// Product of random elementary shears and a signed permutation.
inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int shears = 0, long bound = 2) {
  if (shears == 0) shears = static_cast<int>(2 * n);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Integer> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + perm[i]] = uniform_int(rng, 0, 1) ? 1 : -1;
  IntMatrix u(n, n, std::move(e));
  if (n < 2) return u;
  for (int s = 0; s < shears; ++s) {
    std::size_t i = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(n) - 1));
    std::size_t j = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(n) - 2));
    if (j >= i) ++j;
    long c = uniform_int(rng, -bound, bound);
    if (c == 0) c = 1;
    u = u * (IntMatrix::identity(n) + IntMatrix::unit(n, i, j, Integer(c)));
  }
  return u;
}

/// Random upper unitriangular matrix with entries in [-bound, bound].
inline IntMatrix random_unitriangular(std::mt19937_64& rng, std::size_t n, long bound = 2) {
  std::vector<Integer> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    e[i * n + i] = 1;
    for (std::size_t j = i + 1; j < n; ++j) e[i * n + j] = uniform_int(rng, -bound, bound);
  }
  return IntMatrix(n, n, std::move(e));
}

inline IntMatrix conjugate(const IntMatrix& g, const IntMatrix& u) {
  return unimodular_inverse(u) * g * u;
}

/// Elementary superdiagonal generators I + E_{i,i+1} of the unitriangular group.
inline std::vector<IntMatrix> unitriangular_generators(std::size_t n) {
  std::vector<IntMatrix> gens;
  for (std::size_t i = 0; i + 1 < n; ++i)
    gens.push_back(IntMatrix::identity(n) + IntMatrix::unit(n, i, i + 1));
  return gens;
}

/// Orders d with small phi(d); their cyclotomic companions are finite-order blocks.
inline const std::vector<std::uint64_t>& small_cyclotomic_orders() {
  static const std::vector<std::uint64_t> orders{1, 2, 3, 4, 5, 6, 8, 10, 12};
  return orders;
}

/// Rays of the cone over a cube: (+-1, ..., +-1, 1).
inline std::vector<RatVector> cube_cone_rays(std::size_t d) {
  std::vector<RatVector> rays;
  for (std::size_t mask = 0; mask < (std::size_t{1} << (d - 1)); ++mask) {
    RatVector r(d, Rational(1));
    for (std::size_t i = 0; i + 1 < d; ++i)
      if (mask >> i & 1) r[i] = -1;
    rays.push_back(r);
  }
  return rays;
}

inline std::vector<RatVector> orthant_rays(std::size_t d) { return RatMatrix::identity(d).to_rows(); }

inline Rational random_weight(std::mt19937_64& rng) {
  static const std::vector<Rational> pool{Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(1),
                                          Rational(3, 2), Rational(2),    Rational(3)};
  return pool[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(pool.size()) - 1))];
}

struct ConeInstance {
  std::string family;
  RatMatrix f;
  Rational q;
  std::vector<RatVector> rays;
  bool expect_bounded = false;  // by construction
};

/// Maps preserving a salient cone of dimension 2..5:
///   weighted permutations of the orthant, balanced (bounded) or not;
///   signed permutations of a cube cone scaled by q, tested at q or at a wrong q;
/// each optionally conjugated by a random rational change of basis R (cone R^-1 C).
inline ConeInstance random_cone_instance(std::mt19937_64& rng) {
  ConeInstance inst;
  std::size_t d = static_cast<std::size_t>(uniform_int(rng, 2, 5));
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  long kind = uniform_int(rng, 0, 3);
  if (kind <= 1) {
    std::shuffle(perm.begin(), perm.end(), rng);
    inst.q = random_weight(rng);
    std::vector<Rational> w(d);
    for (auto& x : w) x = random_weight(rng);
    bool balanced = kind == 0;
    if (balanced) {
      // Make the product of weights along each cycle equal q^length.
      std::vector<bool> done(d, false);
      for (std::size_t s = 0; s < d; ++s) {
        if (done[s]) continue;
        std::vector<std::size_t> cycle;
        for (std::size_t i = s; !done[i]; i = perm[i]) {
          done[i] = true;
          cycle.push_back(i);
        }
        Rational prod = 1, target = 1;
        for (std::size_t k = 0; k + 1 < cycle.size(); ++k) prod *= w[cycle[k]];
        for (std::size_t k = 0; k < cycle.size(); ++k) target *= inst.q;
        w[cycle.back()] = target / prod;
      }
    }
    std::vector<Rational> e(d * d);
    for (std::size_t i = 0; i < d; ++i) e[perm[i] * d + i] = w[i];  // e_i -> w_i e_perm(i)
    inst.f = RatMatrix(d, d, std::move(e));
    inst.rays = orthant_rays(d);
    inst.family = balanced ? "orthant-balanced" : "orthant-weighted";
    inst.expect_bounded = balanced;
    if (!balanced) {
      // Random weights can still balance by accident; decide from the construction.
      std::vector<bool> done(d, false);
      bool all = true;
      for (std::size_t s = 0; s < d; ++s) {
        if (done[s]) continue;
        Rational prod = 1, target = 1;
        for (std::size_t i = s; !done[i]; i = perm[i]) {
          done[i] = true;
          prod *= w[i];
          target *= inst.q;
        }
        all = all && prod == target;
      }
      inst.expect_bounded = all;
    }
  } else {
    std::shuffle(perm.begin(), perm.end() - 1, rng);
    Rational scale = random_weight(rng);
    std::vector<Rational> e(d * d);
    for (std::size_t i = 0; i + 1 < d; ++i) e[perm[i] * d + i] = scale * (uniform_int(rng, 0, 1) ? 1 : -1);
    e[d * d - 1] = scale;
    inst.f = RatMatrix(d, d, std::move(e));
    inst.rays = cube_cone_rays(d);
    inst.q = kind == 2 ? scale : scale * Rational(3, 2);
    inst.family = kind == 2 ? "cube-signed-permutation" : "cube-wrong-q";
    inst.expect_bounded = kind == 2;
  }
  if (uniform_int(rng, 0, 1)) {
    IntMatrix r;
    do r = random_int_matrix(rng, d, 2);
    while (determinant(r) == 0);
    RatMatrix rr = to_rational(r), rinv = inverse(rr);
    inst.f = rinv * inst.f * rr;
    for (auto& ray : inst.rays) ray = rinv.apply(ray);
    inst.family += "-conjugated";
  }
  return inst;
}

}  // namespace zeroent::testing
