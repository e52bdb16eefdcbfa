#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zeroent/matrix.hpp"
#include "zeroent/polynomial.hpp"
#include "zeroent/real_interval.hpp"

namespace zeroent {

enum class EntropyKind { Unipotent, QuasiUnipotent, PositiveEntropy };

std::string to_string(EntropyKind kind);

struct CyclotomicFactor {
  std::uint64_t order = 0;  // d in Phi_d
  unsigned multiplicity = 0;

  friend bool operator==(const CyclotomicFactor&, const CyclotomicFactor&) = default;
};

struct CyclotomicSplit {
  std::vector<CyclotomicFactor> profile;  // ascending order d
  IntPolynomial residual;
};

struct EntropyClassification {
  EntropyKind kind = EntropyKind::Unipotent;
  std::optional<Integer> quasi_order;            // least d with g^d unipotent
  std::optional<RealInterval> spectral_radius;   // only for PositiveEntropy
  std::vector<CyclotomicFactor> cyclotomic_profile;
  IntPolynomial residual;
};

std::uint64_t euler_phi(std::uint64_t d);

struct UniformExponent {
  std::vector<std::uint64_t> d_list;  // every d with phi(d) <= r, ascending
  Integer m_product;                    // product of d_list
  Integer m_lcm;                      // lcm of d_list
};

/// All d with phi(d) <= r. Since phi(d) >= sqrt(d/2) for every d >= 1,
/// phi(d) <= r forces d <= 2 r^2, which bounds the enumeration.
UniformExponent uniform_exponent(std::uint64_t r);

/// Phi_d = (x^d - 1) / prod_{e | d, e < d} Phi_e, by exact division.
IntPolynomial cyclotomic_polynomial(std::uint64_t d);

/// Divides out every cyclotomic Phi_d (phi(d) <= deg f) to maximal multiplicity.
/// Requires f monic with |f(0)| = 1; the residual is constant exactly when
/// all roots of f are roots of unity (Kronecker).
CyclotomicSplit strip_cyclotomic_factors(const IntPolynomial& f);

/// Requires g unimodular. Zero-entropy results are certified by checking
/// (g^quasi_order - I)^dim = 0 exactly.
EntropyClassification classify_entropy(const IntMatrix& g, const Rational& width);

/// (g^m - I)^dim = 0, decided exactly without touching the characteristic
/// polynomial. A nonzero residue modulo a prime proves the nonzero case
/// cheaply; otherwise the integer power is formed (small whenever g^m is
/// unipotent, since powers of quasi-unipotent matrices grow polynomially).
bool power_unipotence_certificate(const IntMatrix& g, const Integer& m);

/// Enclosure of the largest eigenvalue modulus; exactly [1,1] when every
/// nonzero eigenvalue is a root of unity.
RealInterval spectral_radius(const IntMatrix& m, const Rational& width);

/// Per-degree matrices for each generator, degree 0..n. Degree 1 carries the
/// generators themselves; degrees 0 and n are 1x1.
struct GradedRepresentation {
  unsigned n = 0;
  std::map<unsigned, std::vector<IntMatrix>> degrees;

  std::size_t generator_count() const;
  const IntMatrix& matrix(unsigned k, std::size_t generator) const;
};

/// Default model of the graded action: degree k is the k-th compound matrix for
/// 0 < k < n, degree 0 is [1], degree n is [det g] when n equals the lattice
/// rank and [1] otherwise. Requires 1 <= n <= rank.
GradedRepresentation exterior_model(const std::vector<IntMatrix>& generators, unsigned n);

/// Structural checks (degree range, shapes, degree-1 agreement) plus a seeded
/// spot check of homomorphy: sampled words with equal degree-1 images must
/// have equal images in every degree. Returns human-readable problems.
std::vector<std::string> validate_graded(const GradedRepresentation& rep,
                                         const std::vector<IntMatrix>& generators, std::uint64_t seed,
                                         std::size_t samples = 64, std::size_t max_word_length = 6);

/// d_k for k = 0..n of one generator.
std::vector<RealInterval> dynamical_degrees(const GradedRepresentation& rep, std::size_t generator,
                                            const Rational& width);
std::vector<RealInterval> dynamical_degrees(const IntMatrix& g, unsigned n, const Rational& width);

struct DegreeCheck {
  std::size_t generator = 0;
  unsigned k = 0;
  std::string relation;  // "d_k <= d_1^k", "d_k^2 >= d_{k-1} d_{k+1}", "d_k <= 1"
  Decision verdict = Decision::Undecided;
};

struct DegreeInequalityReport {
  std::vector<std::vector<RealInterval>> degrees;  // per generator
  std::vector<DegreeCheck> checks;
  Rational final_width;
  bool all_hold() const;
};

/// Evaluates d_k <= d_1^k and log-concavity for each generator (and d_k <= 1
/// for zero-entropy generators). Undecided verdicts trigger up to `refinements`
/// recomputations at a 2^-8 finer width before being reported as such.
DegreeInequalityReport check_degree_inequalities(const GradedRepresentation& rep, const Rational& width,
                                                 unsigned refinements = 3);

}  // namespace zeroent
