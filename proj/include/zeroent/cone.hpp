#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zeroent/group_spec.hpp"
#include "zeroent/matrix.hpp"
#include "zeroent/polynomial.hpp"

namespace zeroent {

/// Salient full-dimensional cone generated by finitely many rays. Rays and
/// facets are stored as primitive integer directions (as rationals).
struct PolyhedralCone {
  std::size_t dim = 0;
  std::vector<RatVector> rays;            // extreme rays, input order
  std::vector<RatVector> facets;          // x in C iff every facet(x) >= 0
  std::vector<RatVector> redundant_rays;  // inputs that are not extreme (or repeat a direction)

  bool contains(const RatVector& x) const;
  bool interior(const RatVector& x) const;
};

/// Facets from every (dim-1)-subset of rays whose normal keeps all rays on
/// one side. Throws PreconditionError for rays that do not span or a cone
/// that contains a line.
PolyhedralCone cone_from_rays(const std::vector<RatVector>& rays);

/// The dual cone {y : y.x >= 0 on C}, generated by the facet functionals.
PolyhedralCone dual(const PolyhedralCone& c);

/// f(C) = C, checked as f and f^-1 mapping every extreme ray into C.
bool preserves_cone(const RatMatrix& f, const PolyhedralCone& c);

struct InteriorFixedResult {
  std::optional<RatVector> vector;         // f x = q x, strictly inside C
  std::vector<RatVector> kernel;           // basis of ker(f - qI)
  std::optional<RatVector> certificate;    // y >= 0, sum y = 1, y^T (F K) = 0
};

/// Exact kernel of f - qI, then strict feasibility facet(x) >= 1 over it. When
/// the kernel is nonzero and no vector exists, a Farkas certificate is returned.
InteriorFixedResult interior_fixed_vector(const RatMatrix& f, const Rational& q, const PolyhedralCone& c);

struct PowerBoundedness {
  bool bounded = false;
  bool diagonalizable = false;
  bool eigen_moduli_all_q = false;
};

/// Every root of the characteristic polynomial of f/q on the unit circle
/// (exact: reciprocal test and a Sturm count on the trace polynomial).
bool roots_on_unit_circle(const RatPolynomial& p);

/// bounded = diagonalizable (squarefree minimal polynomial) and every
/// eigenvalue of modulus q. Integer f with q = 1 goes through cyclotomic
/// stripping; everything else through roots_on_unit_circle.
PowerBoundedness power_bounded_exact(const RatMatrix& f, const Rational& q);

/// max over rows of the absolute row sum.
Rational max_row_sum_norm(const RatMatrix& m);

struct ConeMapAnalysis {
  bool preserves = false;
  Rational q;
  std::optional<RatVector> interior_fixed;
  PowerBoundedness power;
  Rational numeric_iterate_bound;  // max over |i| <= range of ||f^i|| / q^i
  Rational ratio_at_range;         // max of the two values at |i| = range
  unsigned sample_range = 0;
  bool criteria_agree = false;
  bool flagged = false;            // unbounded, yet ratio_at_range <= growth_threshold
};

inline const Rational kGrowthThreshold = 1000;

/// Both sides of the interior-fixed-vector / bounded-iterates equivalence,
/// plus the sampled iterate norms. Throws PreconditionError if f does not preserve C.
ConeMapAnalysis meng_zhang_report(const RatMatrix& f, const Rational& q, const PolyhedralCone& c,
                                  unsigned sample_range = 40);

struct FujikiLiebermanStep {
  std::string step;  // "i" .. "iv"
  bool ok = false;
  std::string detail;
};

struct FujikiLiebermanGenerator {
  bool preserves = false;
  std::vector<FujikiLiebermanStep> steps;  // stops at the first failing step
};

struct FujikiLiebermanReport {
  bool success = false;
  std::optional<std::string> failed_step;  // e.g. "ii", or "v" for the closure
  std::vector<FujikiLiebermanGenerator> generators;
  Integer m_lcm = 1;
  std::optional<std::size_t> image_order;
  std::string conclusion;
};

/// Per generator g with declared class B_g: (i) g B_g = B_g with B_g interior
/// to the pseudo-effective model; (ii) bounded iterates for q = 1; (iii) an
/// interior fixed vector of (g^-1)^T in the dual (nef) model, which needs g to
/// preserve the cone; (iv) g^m_lcm(r) = I. Then (v) the image group is
/// enumerated up to group_cap elements.
FujikiLiebermanReport fujiki_lieberman_pipeline(const MatrixGroupSpec& spec, std::size_t group_cap = 1000000);

/// Breadth-first closure of the group generated by finite-order matrices;
/// nullopt if more than cap elements appear.
std::optional<std::size_t> finite_group_order(const std::vector<IntMatrix>& generators, std::size_t cap);

}  // namespace zeroent
