#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zeroent/group_spec.hpp"
#include "zeroent/matrix.hpp"
#include "zeroent/unipotent.hpp"
#include "zeroent/words.hpp"

namespace zeroent {

enum class BoundVerdict { Holds, Fails, NotApplicable };
std::string to_string(BoundVerdict v);

/// log g = sum_{j>=1} (-1)^{j+1} (g - I)^j / j, a finite sum; exp(log g) = g is
/// rechecked exactly before returning.
RatMatrix matrix_log_unipotent(const RatMatrix& g);
RatMatrix matrix_exp_nilpotent(const RatMatrix& x);

struct NilpotentLieAlgebra {
  std::size_t ambient_dim = 0;
  std::vector<RatMatrix> basis;                         // reduced echelon order of the flattened matrices
  std::vector<std::vector<RatVector>> structure;        // structure[i][j] = coordinates of [b_i, b_j]

  std::size_t dim() const noexcept { return basis.size(); }
};

inline RatMatrix bracket(const RatMatrix& x, const RatMatrix& y) { return x * y - y * x; }

/// Smallest bracket-closed span containing the seeds. Throws PreconditionError
/// if a seed, or any bracket produced on the way, is not nilpotent.
NilpotentLieAlgebra lie_closure(const std::vector<RatMatrix>& seeds, std::size_t ambient_dim = 0);

/// Independence, closure (structure constants reproduce every bracket) and nilpotency.
bool validate_algebra(const NilpotentLieAlgebra& l);

struct SeriesLength {
  unsigned length = 0;
  std::vector<std::size_t> dims;  // dim L, ..., 0
};

/// L^(0) = L, L^(i+1) = [L^(i), L^(i)].
SeriesLength derived_length(const NilpotentLieAlgebra& l);
/// L_(0) = L, L_(i+1) = [L_(i), L].
SeriesLength nilpotency_class(const NilpotentLieAlgebra& l);

struct SeriesReport {
  unsigned derived_length = 0;
  unsigned nilpotency_class = 0;
  std::vector<std::size_t> derived_dims;
  std::vector<std::size_t> lcs_dims;
  std::size_t lie_dim = 0;
  std::size_t word_budget = 0;
  unsigned word_search_lower_bound = 0;        // for the derived length
  unsigned word_search_class_lower_bound = 0;  // for the nilpotency class
  std::optional<Word> derived_witness;         // deepest nontrivial iterated commutator found
  std::optional<Word> class_witness;
};

/// Lengths of a unipotent group from the Lie algebra spanned by the logarithms
/// of its generators, cross-checked against explicit commutators [a,b] =
/// a^-1 b^-1 a b. Level-0 words have length <= word_budget; every commutator
/// level keeps at most pool_cap distinct nontrivial elements, formed from pairs
/// in order of increasing index sum. A word-level bound above the Lie value
/// throws std::logic_error. No generators means the trivial group, all zeros.
SeriesReport group_series_report(const std::vector<IntMatrix>& generators, std::size_t word_budget = 10,
                                 std::size_t pool_cap = 48);

/// l <= log2(c) + 1, decided as 2^(l-1) <= c. (0, 0) is the trivial group and
/// is not applicable; c = 0 with l > 0 is a PreconditionError.
BoundVerdict robinson_check(unsigned ell, unsigned c);

struct EssentialLengthReport {
  PipelineStatus pipeline = PipelineStatus::Inapplicable;
  std::optional<unsigned> ell_ess;
  std::optional<unsigned> nilpotency_class;
  BoundVerdict bound = BoundVerdict::NotApplicable;  // ell_ess <= n - 1
  std::map<unsigned, unsigned> degree_lengths;         // derived length on each supplied degree 1..n-1
  bool degrees_agree = true;
  std::vector<std::string> problems;
};

/// ell_ess is the derived length of the certified unipotent image in degree 1.
/// Supplied gradings in degrees 1..n-1 are raised to the same power and must
/// give unipotent images of the same derived length.
EssentialLengthReport essential_length(const MatrixGroupSpec& spec, const UnipotentPipelineReport& pipeline);

struct CorollaryChainReport {
  BoundVerdict verdict = BoundVerdict::NotApplicable;
  std::optional<unsigned> chain_value;  // ell(image) + 1
  std::optional<unsigned> extension_bound;  // bound on ell of the extension by the abelian kernel
  std::string note;
};

/// Checks ell(image) + 1 <= n. Requires kernel_abelian to be set; false is a
/// PreconditionError, absent means not applicable.
CorollaryChainReport corollary_chain_check(const MatrixGroupSpec& spec, const EssentialLengthReport& ess);

}  // namespace zeroent
