#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zeroent/matrix.hpp"

namespace zeroent {

/// An oracle annotation from a spec file. Algorithms never read these; the
/// corpus harness compares them with computed values.
struct Expectation {
  std::string value;  // canonical text, e.g. "2" or "holds"
  std::string provenance;

  friend bool operator==(const Expectation&, const Expectation&) = default;
};

struct MatrixGroupSpec {
  std::string name;
  std::optional<unsigned> n;  // dimension of the variety
  std::size_t r = 0;          // lattice rank
  std::vector<IntMatrix> generators;
  std::map<unsigned, std::vector<IntMatrix>> gradings;  // degree -> one matrix per generator
  std::optional<std::vector<RatVector>> cone;           // rays of the pseudo-effective model
  std::optional<std::vector<RatVector>> fixed_classes;  // one class per generator
  std::optional<bool> kernel_abelian;
  std::map<std::string, Expectation> expected;
  bool expect_violation = false;

  friend bool operator==(const MatrixGroupSpec&, const MatrixGroupSpec&) = default;
};

}  // namespace zeroent
