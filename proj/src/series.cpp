#include "zeroent/series.hpp"

#include <map>

#include "zeroent/errors.hpp"
#include "zeroent/linalg.hpp"

namespace zeroent {

std::string to_string(BoundVerdict v) {
  switch (v) {
    case BoundVerdict::Holds: return "holds";
    case BoundVerdict::Fails: return "fails";
    case BoundVerdict::NotApplicable: return "not-applicable";
  }
  return "?";
}

namespace {

bool nilpotent(const RatMatrix& x) { return x.power(Integer(static_cast<unsigned long>(x.dim()))).is_zero(); }

Rational factorial(unsigned j) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), j);
  return Rational(f);
}

std::vector<RatMatrix> bracket_span(const std::vector<RatMatrix>& a, const std::vector<RatMatrix>& b,
                                    std::size_t n) {
  EchelonBasis span(n * n);
  for (const auto& x : a)
    for (const auto& y : b) span.insert(flatten(bracket(x, y)));
  std::vector<RatMatrix> out;
  for (const auto& row : span.rows()) out.push_back(unflatten(row, n));
  return out;
}

SeriesLength series(const NilpotentLieAlgebra& l, bool derived) {
  SeriesLength out;
  std::vector<RatMatrix> current = l.basis;
  out.dims.push_back(current.size());
  while (!current.empty()) {
    std::vector<RatMatrix> next = bracket_span(current, derived ? current : l.basis, l.ambient_dim);
    if (next.size() >= current.size()) throw std::logic_error("Lie series failed to descend");
    current = std::move(next);
    out.dims.push_back(current.size());
    ++out.length;
  }
  return out;
}

struct PoolElement {
  Word word;
  IntMatrix m;
  IntMatrix inv;
};

using Key = std::vector<Integer>;

Key key_of(const IntMatrix& m) { return Key(m.entries().begin(), m.entries().end()); }

// Nontrivial commutators [a_i, b_j] in order of increasing i + j, deduplicated, at most `cap`.
std::vector<PoolElement> commutator_pool(const std::vector<PoolElement>& a, const std::vector<PoolElement>& b,
                                         bool symmetric, std::size_t cap) {
  std::vector<PoolElement> out;
  std::map<Key, bool> seen;
  if (a.empty() || b.empty()) return out;
  std::size_t max_sum = a.size() + b.size() - 2;
  for (std::size_t s = 0; s <= max_sum && out.size() < cap; ++s)
    for (std::size_t i = 0; i <= s && i < a.size() && out.size() < cap; ++i) {
      std::size_t j = s - i;
      if (j >= b.size() || (symmetric && j <= i)) continue;
      const auto& x = a[i];
      const auto& y = b[j];
      IntMatrix m = x.inv * y.inv * x.m * y.m;
      if (m.is_identity() || !seen.emplace(key_of(m), true).second) continue;
      out.push_back({commutator(x.word, y.word), m, y.inv * x.inv * y.m * x.m});
    }
  return out;
}

}  // namespace

RatMatrix matrix_exp_nilpotent(const RatMatrix& x) {
  if (!nilpotent(x)) throw PreconditionError("exponential series needs a nilpotent matrix");
  std::size_t n = x.dim();
  RatMatrix sum = RatMatrix::identity(n);
  RatMatrix p = RatMatrix::identity(n);
  for (unsigned j = 1; j < n; ++j) {
    p = p * x;
    sum = sum + (1 / factorial(j)) * p;
  }
  return sum;
}

RatMatrix matrix_log_unipotent(const RatMatrix& g) {
  if (!g.square() || !is_unipotent(g)) throw PreconditionError("logarithm needs a unipotent matrix");
  std::size_t n = g.dim();
  RatMatrix nil = g - RatMatrix::identity(n);
  RatMatrix sum(n, n);
  RatMatrix p = RatMatrix::identity(n);
  for (unsigned j = 1; j < n; ++j) {
    p = p * nil;
    sum = sum + Rational(j % 2 ? 1 : -1, j) * p;
  }
  if (!(matrix_exp_nilpotent(sum) == g)) throw std::logic_error("exp(log g) != g");
  return sum;
}

NilpotentLieAlgebra lie_closure(const std::vector<RatMatrix>& seeds, std::size_t ambient_dim) {
  NilpotentLieAlgebra l;
  l.ambient_dim = seeds.empty() ? ambient_dim : seeds.front().dim();
  std::size_t n = l.ambient_dim;
  EchelonBasis span(n * n);
  std::vector<RatMatrix> elems;
  for (const auto& s : seeds) {
    if (s.dim() != n) throw PreconditionError("Lie seeds of different sizes");
    if (!nilpotent(s)) throw PreconditionError("Lie seed is not nilpotent");
    if (span.insert(flatten(s))) elems.push_back(s);
  }
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      RatMatrix b = bracket(elems[i], elems[j]);
      if (!span.insert(flatten(b))) continue;
      if (!nilpotent(b)) throw PreconditionError("bracket closure of the seeds is not nilpotent");
      elems.push_back(std::move(b));
    }
  for (const auto& row : span.rows()) l.basis.push_back(unflatten(row, n));
  for (const auto& x : l.basis) {
    if (!nilpotent(x)) throw PreconditionError("bracket closure of the seeds is not nilpotent");
    std::vector<RatVector> row;
    for (const auto& y : l.basis) row.push_back(span.coordinates(flatten(bracket(x, y))));
    l.structure.push_back(std::move(row));
  }
  return l;
}

bool validate_algebra(const NilpotentLieAlgebra& l) {
  std::size_t n = l.ambient_dim;
  std::vector<RatVector> flat;
  for (const auto& b : l.basis) {
    if (b.rows() != n || b.cols() != n || !nilpotent(b)) return false;
    flat.push_back(flatten(b));
  }
  if (rank(flat) != l.basis.size()) return false;
  if (l.structure.size() != l.basis.size()) return false;
  for (std::size_t i = 0; i < l.basis.size(); ++i) {
    if (l.structure[i].size() != l.basis.size()) return false;
    for (std::size_t j = 0; j < l.basis.size(); ++j) {
      const RatVector& c = l.structure[i][j];
      if (c.size() != l.basis.size()) return false;
      RatMatrix combo(n, n);
      for (std::size_t k = 0; k < c.size(); ++k) combo = combo + c[k] * l.basis[k];
      if (!(combo == bracket(l.basis[i], l.basis[j]))) return false;
    }
  }
  return true;
}

SeriesLength derived_length(const NilpotentLieAlgebra& l) { return series(l, true); }

SeriesLength nilpotency_class(const NilpotentLieAlgebra& l) { return series(l, false); }

SeriesReport group_series_report(const std::vector<IntMatrix>& generators, std::size_t word_budget,
                                 std::size_t pool_cap) {
  SeriesReport out;
  out.word_budget = word_budget;
  out.derived_dims = {0};
  out.lcs_dims = {0};
  if (generators.empty()) return out;
  if (!certify_unipotent_group(generators, 0).certified())
    throw PreconditionError("series lengths need a unipotent group");

  std::vector<RatMatrix> logs;
  for (const auto& g : generators) logs.push_back(matrix_log_unipotent(to_rational(g)));
  NilpotentLieAlgebra l = lie_closure(logs);
  SeriesLength d = derived_length(l);
  SeriesLength c = nilpotency_class(l);
  out.lie_dim = l.dim();
  out.derived_length = d.length;
  out.derived_dims = d.dims;
  out.nilpotency_class = c.length;
  out.lcs_dims = c.dims;

  WordAlphabet alphabet(generators);
  std::vector<PoolElement> base;
  for_each_word(alphabet, word_budget, pool_cap + 1, [&](const WordElement& e) {
    if (!e.matrix.is_identity()) base.push_back({e.word, e.matrix, alphabet.evaluate(inverse(e.word))});
    return base.size() < pool_cap;
  });
  std::size_t max_levels = generators.front().dim() + 1;

  std::vector<PoolElement> pool = base;
  for (unsigned level = 0; !pool.empty() && level < max_levels; ++level) {
    out.word_search_lower_bound = level + 1;
    out.derived_witness = pool.front().word;
    pool = commutator_pool(pool, pool, true, pool_cap);
  }
  pool = base;
  for (unsigned level = 0; !pool.empty() && level < max_levels; ++level) {
    out.word_search_class_lower_bound = level + 1;
    out.class_witness = pool.front().word;
    pool = commutator_pool(pool, base, false, pool_cap);
  }
  if (out.word_search_lower_bound > out.derived_length || out.word_search_class_lower_bound > out.nilpotency_class)
    throw std::logic_error("explicit commutators exceed the Lie algebra series lengths");
  return out;
}

BoundVerdict robinson_check(unsigned ell, unsigned c) {
  if (c == 0) {
    if (ell > 0) throw PreconditionError("nilpotency class 0 with positive derived length");
    return BoundVerdict::NotApplicable;
  }
  if (ell == 0) return BoundVerdict::Holds;
  Integer lhs;
  mpz_ui_pow_ui(lhs.get_mpz_t(), 2, ell - 1);
  return lhs <= c ? BoundVerdict::Holds : BoundVerdict::Fails;
}

EssentialLengthReport essential_length(const MatrixGroupSpec& spec, const UnipotentPipelineReport& pipeline) {
  EssentialLengthReport out;
  out.pipeline = pipeline.status;
  if (pipeline.status != PipelineStatus::Certified) {
    out.problems.push_back("unipotent pipeline did not certify: " + pipeline.message);
    return out;
  }
  SeriesReport s = group_series_report(pipeline.powered, 0);
  out.ell_ess = s.derived_length;
  out.nilpotency_class = s.nilpotency_class;
  if (spec.n) out.bound = *out.ell_ess + 1 <= *spec.n ? BoundVerdict::Holds : BoundVerdict::Fails;

  for (const auto& [k, mats] : spec.gradings) {
    if (k < 1 || !spec.n || k + 1 > *spec.n) continue;
    std::vector<IntMatrix> powered = power_replacement(mats, pipeline.m_used);
    if (!certify_unipotent_group(powered, 0).certified()) {
      out.problems.push_back("degree " + std::to_string(k) + " image of the powered subgroup is not unipotent");
      out.degrees_agree = false;
      continue;
    }
    unsigned len = group_series_report(powered, 0).derived_length;
    out.degree_lengths[k] = len;
    if (len != *out.ell_ess) {
      out.degrees_agree = false;
      out.problems.push_back("degree " + std::to_string(k) + " derived length " + std::to_string(len) +
                             " differs from degree 1 (" + std::to_string(*out.ell_ess) + ")");
    }
  }
  return out;
}

CorollaryChainReport corollary_chain_check(const MatrixGroupSpec& spec, const EssentialLengthReport& ess) {
  CorollaryChainReport out;
  if (!spec.kernel_abelian) {
    out.note = "no abelian kernel declared";
    return out;
  }
  if (!*spec.kernel_abelian) throw PreconditionError("the chain needs an abelian kernel");
  if (!ess.ell_ess || !spec.n) {
    out.note = "needs a certified unipotent image and a declared n";
    return out;
  }
  out.chain_value = *ess.ell_ess + 1;
  out.extension_bound = *ess.ell_ess + 1;
  out.verdict = *out.chain_value <= *spec.n ? BoundVerdict::Holds : BoundVerdict::Fails;
  out.note =
      "minimal derived length over finite-index subgroups is replaced by the derived length of the unipotent "
      "image, which every finite-index subgroup of a unipotent group shares";
  return out;
}

}  // namespace zeroent
