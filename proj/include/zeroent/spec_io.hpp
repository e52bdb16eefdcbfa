#pragma once

#include <string>

#include "zeroent/group_spec.hpp"

namespace zeroent {

/// Parses and validates a spec document. Every integer may be a JSON number or
/// a decimal string; rationals are strings like "1/2". Errors are ParseError
/// with a JSON pointer to the offending value.
MatrixGroupSpec parse_spec(const std::string& text);

/// Pretty JSON with sorted keys; matrix entries and vector coordinates are
/// written as strings so no consumer truncates them.
std::string emit_spec(const MatrixGroupSpec& spec);

MatrixGroupSpec load_spec(const std::string& path);

}  // namespace zeroent
