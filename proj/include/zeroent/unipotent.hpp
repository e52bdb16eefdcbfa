#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "zeroent/matrix.hpp"
#include "zeroent/spectral.hpp"
#include "zeroent/words.hpp"

namespace zeroent {

template <class T>
bool is_unipotent(const Matrix<T>& g) {
  std::size_t n = g.dim();
  return (g - Matrix<T>::identity(n)).power(Integer(static_cast<unsigned long>(n))).is_zero();
}

struct TriangularizationCertificate {
  RatMatrix basis_change;              // columns are the new basis
  std::vector<std::size_t> flag_dims;  // dimensions of the invariant flag, ending at dim
};

/// A product (g_{i1} - I)...(g_{ik} - I) with k >= dim that is nonzero. In a
/// unipotent group every such product vanishes, so one nonzero product refutes
/// unipotence. The group word, when found, has an eigenvalue other than 1.
struct NonUnipotenceWitness {
  std::vector<std::size_t> algebra_word;  // 0-based generator indices
  RatMatrix algebra_product;
  std::optional<WordElement> group_word;
};

struct UnipotenceVerdict {
  std::variant<TriangularizationCertificate, NonUnipotenceWitness> result;

  bool certified() const { return std::holds_alternative<TriangularizationCertificate>(result); }
  const TriangularizationCertificate& certificate() const { return std::get<TriangularizationCertificate>(result); }
  const NonUnipotenceWitness& witness() const { return std::get<NonUnipotenceWitness>(result); }
};

/// Decides unipotence of the group through the associative algebra spanned by
/// products of the nilpotent parts g_i - I. On success the flag of iterated
/// joint kernels gives a simultaneous unitriangular basis; generators that are
/// already upper unitriangular keep the identity basis and the standard flag.
/// An empty generator list is the trivial group, certified in dimension `dim`.
UnipotenceVerdict certify_unipotent_group(const std::vector<IntMatrix>& generators,
                                          std::size_t word_budget = 8, std::size_t dim = 0);

/// Entry-by-entry check that basis_change^-1 g basis_change is upper unitriangular for every g.
bool validate_certificate(const TriangularizationCertificate& cert, const std::vector<IntMatrix>& generators);

/// Recomputes the algebra product and the group word; true when both refute unipotence.
bool validate_witness(const NonUnipotenceWitness& w, const std::vector<IntMatrix>& generators);

std::vector<IntMatrix> power_replacement(const std::vector<IntMatrix>& generators, const Integer& m);

enum class PipelineStatus { Certified, NotUnipotent, Inapplicable };
std::string to_string(PipelineStatus s);

struct UnipotentPipelineReport {
  std::vector<EntropyClassification> classifications;
  PipelineStatus status = PipelineStatus::Inapplicable;
  Integer m_used = 1;       // exponent applied to every generator
  Integer m_effective = 1;  // lcm of the generators' quasi-orders
  Integer m_product = 1;
  Integer m_lcm = 1;
  std::vector<IntMatrix> powered;
  std::optional<UnipotenceVerdict> verdict;
  std::string message;
};

/// Classifies each generator, replaces generators by m-th powers (m = 1 when
/// all are unipotent, m_lcm(r) otherwise) and certifies the subgroup they
/// generate. A positive-entropy generator makes the pipeline inapplicable;
/// a non-unipotent powered subgroup is reported, never hidden.
UnipotentPipelineReport unipotent_pipeline(const std::vector<IntMatrix>& generators, std::size_t rank,
                                           const Rational& width, std::size_t word_budget = 8);

}  // namespace zeroent
