#pragma once

#include <optional>

#include "zeroent/matrix.hpp"

namespace zeroent {

/// Some z >= 0 with m z = d, by phase-one simplex over Q with Bland's rule.
std::optional<RatVector> nonnegative_solution(const RatMatrix& m, const RatVector& d);

/// Exactly one of the two is set: a point c with a c >= 1 in every row, or a
/// certificate y >= 0 with sum y = 1 and a^T y = 0 proving no c has a c > 0.
struct StrictFeasibility {
  std::optional<RatVector> point;
  std::optional<RatVector> certificate;
};

StrictFeasibility strictly_feasible(const RatMatrix& a);

}  // namespace zeroent
