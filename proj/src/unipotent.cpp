#include "zeroent/unipotent.hpp"

#include <algorithm>

#include "zeroent/errors.hpp"
#include "zeroent/linalg.hpp"

namespace zeroent {

namespace {

constexpr std::size_t kWitnessSearchCap = 20000;

struct AlgebraWord {
  std::vector<std::size_t> word;
  RatMatrix product;
};

RatMatrix from_row_vectors(const std::vector<RatVector>& rows, std::size_t cols) {
  std::vector<Rational> e;
  for (const auto& r : rows) e.insert(e.end(), r.begin(), r.end());
  return RatMatrix(rows.size(), cols, std::move(e));
}

// Spanning words of length exactly `level`, kept only when independent of the previous ones.
std::vector<AlgebraWord> next_level(const std::vector<AlgebraWord>& level, const std::vector<RatMatrix>& nil) {
  std::vector<AlgebraWord> out;
  if (level.empty()) return out;
  std::size_t n = nil.front().dim();
  EchelonBasis span(n * n);
  for (const auto& x : level)
    for (std::size_t i = 0; i < nil.size(); ++i) {
      RatMatrix p = x.product * nil[i];
      if (!span.insert(flatten(p))) continue;
      AlgebraWord w{x.word, std::move(p)};
      w.word.push_back(i);
      out.push_back(std::move(w));
    }
  return out;
}

std::vector<AlgebraWord> first_level(const std::vector<RatMatrix>& nil) {
  std::vector<AlgebraWord> out;
  if (nil.empty()) return out;
  std::size_t n = nil.front().dim();
  EchelonBasis span(n * n);
  for (std::size_t i = 0; i < nil.size(); ++i)
    if (span.insert(flatten(nil[i]))) out.push_back({{i}, nil[i]});
  return out;
}

TriangularizationCertificate kernel_flag(const std::vector<RatMatrix>& nil, std::size_t n) {
  TriangularizationCertificate cert;
  std::vector<RatVector> flag_basis;  // basis of the current flag space W_k
  EchelonBasis chosen(n);
  std::vector<RatVector> columns;
  while (chosen.size() < n) {
    // W_{k+1} = { v : N_i v in W_k for every i }.
    std::vector<RatVector> annihilator =
        flag_basis.empty() ? RatMatrix::identity(n).to_rows() : nullspace(from_row_vectors(flag_basis, n));
    std::vector<RatVector> stacked;
    for (const auto& m : nil) {
      RatMatrix pm = from_row_vectors(annihilator, n) * m;
      for (auto& r : pm.to_rows()) stacked.push_back(std::move(r));
    }
    std::vector<RatVector> next = stacked.empty() ? RatMatrix::identity(n).to_rows()
                                                  : nullspace(from_row_vectors(stacked, n));
    if (next.size() <= flag_basis.size()) throw std::logic_error("joint kernel flag stalled on a nilpotent algebra");
    EchelonBasis next_span(n);
    for (const auto& v : next) next_span.insert(v);
    std::vector<RatVector> candidates = RatMatrix::identity(n).to_rows();
    candidates.erase(std::remove_if(candidates.begin(), candidates.end(),
                                    [&](const RatVector& e) { return !next_span.contains(e); }),
                     candidates.end());
    candidates.insert(candidates.end(), next.begin(), next.end());
    for (const auto& v : candidates) {
      if (chosen.size() == next.size()) break;
      if (chosen.insert(v)) columns.push_back(v);
    }
    flag_basis = next;
    cert.flag_dims.push_back(next.size());
  }
  cert.basis_change = from_columns(columns);
  return cert;
}

}  // namespace

UnipotenceVerdict certify_unipotent_group(const std::vector<IntMatrix>& generators, std::size_t word_budget,
                                          std::size_t dim) {
  std::size_t n = generators.empty() ? dim : generators.front().dim();
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (!generators[i].square() || generators[i].dim() != n)
      throw PreconditionError("generator " + std::to_string(i + 1) + " has the wrong dimension");
    if (determinant(generators[i]) == 0)
      throw PreconditionError("generator " + std::to_string(i + 1) + " is singular");
  }
  if (std::all_of(generators.begin(), generators.end(), [](const IntMatrix& g) { return g.is_upper_unitriangular(); })) {
    TriangularizationCertificate cert{RatMatrix::identity(n), {}};
    for (std::size_t k = 1; k <= n; ++k) cert.flag_dims.push_back(k);
    return {cert};
  }

  std::vector<RatMatrix> nil;
  for (const auto& g : generators) nil.push_back(to_rational(g) - RatMatrix::identity(n));
  std::vector<AlgebraWord> level = first_level(nil);
  for (std::size_t k = 1; k < n && !level.empty(); ++k) level = next_level(level, nil);
  if (level.empty()) return {kernel_flag(nil, n)};

  NonUnipotenceWitness w{level.front().word, level.front().product, std::nullopt};
  bool invertible_over_z = std::all_of(generators.begin(), generators.end(), is_unimodular);
  if (invertible_over_z && word_budget > 0) {
    WordAlphabet alphabet(generators);
    for_each_word(alphabet, word_budget, kWitnessSearchCap, [&](const WordElement& e) {
      if (is_unipotent(e.matrix)) return true;
      w.group_word = e;
      return false;
    });
  }
  return {w};
}

bool validate_certificate(const TriangularizationCertificate& cert, const std::vector<IntMatrix>& generators) {
  const RatMatrix& b = cert.basis_change;
  if (!b.square()) return false;
  std::size_t n = b.dim();
  if (rank(b) != n) return false;
  if (cert.flag_dims.empty() ? n != 0 : cert.flag_dims.back() != n) return false;
  for (std::size_t i = 1; i < cert.flag_dims.size(); ++i)
    if (cert.flag_dims[i] <= cert.flag_dims[i - 1]) return false;
  RatMatrix binv = inverse(b);
  for (const auto& g : generators) {
    if (g.dim() != n) return false;
    if (!(binv * to_rational(g) * b).is_upper_unitriangular()) return false;
  }
  return true;
}

bool validate_witness(const NonUnipotenceWitness& w, const std::vector<IntMatrix>& generators) {
  if (generators.empty()) return false;
  std::size_t n = generators.front().dim();
  if (w.algebra_word.size() < n) return false;
  RatMatrix p = RatMatrix::identity(n);
  for (std::size_t i : w.algebra_word) {
    if (i >= generators.size()) return false;
    p = p * (to_rational(generators[i]) - RatMatrix::identity(n));
  }
  if (p.is_zero() || !(p == w.algebra_product)) return false;
  if (w.group_word) {
    IntMatrix m = WordAlphabet(generators).evaluate(w.group_word->word);
    if (!(m == w.group_word->matrix)) return false;
    if (char_poly(m) == IntPolynomial::linear(Integer(1)).pow(static_cast<unsigned>(n))) return false;
  }
  return true;
}

std::vector<IntMatrix> power_replacement(const std::vector<IntMatrix>& generators, const Integer& m) {
  if (m < 1) throw PreconditionError("power replacement needs m >= 1");
  std::vector<IntMatrix> out;
  for (const auto& g : generators) out.push_back(g.power(m));
  return out;
}

std::string to_string(PipelineStatus s) {
  switch (s) {
    case PipelineStatus::Certified: return "certified";
    case PipelineStatus::NotUnipotent: return "not-unipotent";
    case PipelineStatus::Inapplicable: return "inapplicable";
  }
  return "?";
}

UnipotentPipelineReport unipotent_pipeline(const std::vector<IntMatrix>& generators, std::size_t rank,
                                           const Rational& width, std::size_t word_budget) {
  UnipotentPipelineReport out;
  UniformExponent ue = uniform_exponent(rank);
  out.m_product = ue.m_product;
  out.m_lcm = ue.m_lcm;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].dim() != rank)
      throw PreconditionError("generator " + std::to_string(i + 1) + " is not " + std::to_string(rank) + "x" +
                              std::to_string(rank));
    out.classifications.push_back(classify_entropy(generators[i], width));
  }
  bool all_unipotent = true;
  for (std::size_t i = 0; i < out.classifications.size(); ++i) {
    const auto& c = out.classifications[i];
    if (c.kind == EntropyKind::PositiveEntropy) {
      out.status = PipelineStatus::Inapplicable;
      out.message = "generator " + std::to_string(i + 1) + " has positive entropy, d_1 in [" +
                    to_decimal(c.spectral_radius->lo, 6) + ", " + to_decimal(c.spectral_radius->hi + Rational(1, 1000000), 6) +
                    "]; no finite-index subgroup acts unipotently";
      return out;
    }
    all_unipotent = all_unipotent && c.kind == EntropyKind::Unipotent;
    out.m_effective = lcm(out.m_effective, *c.quasi_order);
  }
  out.m_used = all_unipotent ? Integer(1) : ue.m_lcm;
  out.powered = power_replacement(generators, out.m_used);
  out.verdict = certify_unipotent_group(out.powered, word_budget, rank);
  if (out.verdict->certified()) {
    out.status = PipelineStatus::Certified;
    out.message = "image of the finite-index candidate subgroup <g_i^" + out.m_used.get_str() + "> is unipotent";
  } else {
    out.status = PipelineStatus::NotUnipotent;
    out.message = "the subgroup generated by the " + out.m_used.get_str() +
                  "-th powers is not unipotent; it need not have finite index, so nothing is concluded for the group";
  }
  return out;
}

}  // namespace zeroent
