#include "zeroent/spectral.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "zeroent/errors.hpp"
#include "zeroent/linalg.hpp"

namespace zeroent {

std::string to_string(EntropyKind kind) {
  switch (kind) {
    case EntropyKind::Unipotent: return "Unipotent";
    case EntropyKind::QuasiUnipotent: return "QuasiUnipotent";
    case EntropyKind::PositiveEntropy: return "PositiveEntropy";
  }
  return "?";
}

std::uint64_t euler_phi(std::uint64_t d) {
  if (d == 0) throw PreconditionError("euler_phi(0) is undefined");
  std::uint64_t result = d;
  std::uint64_t n = d;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

UniformExponent uniform_exponent(std::uint64_t r) {
  if (r == 0) throw PreconditionError("uniform exponent needs a positive rank");
  UniformExponent out;
  out.m_product = 1;
  out.m_lcm = 1;
  for (std::uint64_t d = 1; d <= 2 * r * r; ++d) {
    if (euler_phi(d) > r) continue;
    out.d_list.push_back(d);
    out.m_product *= static_cast<unsigned long>(d);
    out.m_lcm = lcm(out.m_lcm, Integer(static_cast<unsigned long>(d)));
  }
  return out;
}

namespace {

std::vector<std::uint64_t> divisors(std::uint64_t d) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t e = 1; e * e <= d; ++e) {
    if (d % e) continue;
    out.push_back(e);
    if (e != d / e) out.push_back(d / e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Memoized Phi_d within one computation.
class CyclotomicTable {
 public:
  const IntPolynomial& get(std::uint64_t d) {
    if (auto it = table_.find(d); it != table_.end()) return it->second;
    IntPolynomial num = IntPolynomial::monomial(Integer(1), d) - IntPolynomial::constant(Integer(1));
    IntPolynomial den = IntPolynomial::constant(Integer(1));
    for (auto e : divisors(d))
      if (e < d) den = den * get(e);
    auto q = divide_exact(num, den);
    if (!q) throw std::logic_error("cyclotomic recursion failed to divide exactly");
    return table_.emplace(d, std::move(*q)).first->second;
  }

 private:
  std::map<std::uint64_t, IntPolynomial> table_;
};

CyclotomicSplit strip_unchecked(const IntPolynomial& f) {
  CyclotomicSplit out;
  IntPolynomial rest = f;
  CyclotomicTable table;
  auto deg = static_cast<std::uint64_t>(std::max(f.degree(), 0));
  for (std::uint64_t d = 1; d <= 2 * deg * deg && rest.degree() > 0; ++d) {
    if (euler_phi(d) > static_cast<std::uint64_t>(rest.degree())) continue;
    const IntPolynomial& phi = table.get(d);
    unsigned mult = 0;
    while (rest.degree() >= phi.degree()) {
      auto q = divide_exact(rest, phi);
      if (!q) break;
      rest = std::move(*q);
      ++mult;
    }
    if (mult) out.profile.push_back({d, mult});
  }
  out.residual = std::move(rest);
  return out;
}

bool nilpotent_power_vanishes(const IntMatrix& a) {
  std::size_t n = a.dim();
  return a.power(Integer(static_cast<unsigned long>(n))).is_zero();
}

IntMatrix reduce_mod(const IntMatrix& a, const Integer& p) {
  std::vector<Integer> e(a.entries().begin(), a.entries().end());
  for (auto& x : e) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
  return IntMatrix(a.rows(), a.cols(), std::move(e));
}

IntMatrix mul_mod(const IntMatrix& a, const IntMatrix& b, const Integer& p) { return reduce_mod(a * b, p); }

IntMatrix pow_mod(const IntMatrix& a, Integer e, const Integer& p) {
  IntMatrix result = IntMatrix::identity(a.dim());
  IntMatrix base = reduce_mod(a, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = mul_mod(result, base, p);
    e >>= 1;
    if (e > 0) base = mul_mod(base, base, p);
  }
  return result;
}

const std::vector<Integer>& certificate_primes() {
  static const std::vector<Integer> primes = [] {
    std::vector<Integer> ps;
    Integer start;
    mpz_ui_pow_ui(start.get_mpz_t(), 2, 61);
    for (int i = 0; i < 3; ++i) {
      Integer p;
      mpz_nextprime(p.get_mpz_t(), start.get_mpz_t());
      ps.push_back(p);
      start = p + 1000;
    }
    return ps;
  }();
  return primes;
}

}  // namespace

IntPolynomial cyclotomic_polynomial(std::uint64_t d) {
  if (d == 0) throw PreconditionError("cyclotomic polynomial of order 0 is undefined");
  CyclotomicTable table;
  return table.get(d);
}

CyclotomicSplit strip_cyclotomic_factors(const IntPolynomial& f) {
  if (!f.is_monic()) throw PreconditionError("cyclotomic stripping needs a monic polynomial");
  if (abs(f.coeff(0)) != 1) throw PreconditionError("cyclotomic stripping needs |f(0)| = 1");
  return strip_unchecked(f);
}

bool power_unipotence_certificate(const IntMatrix& g, const Integer& m) {
  std::size_t n = g.dim();
  IntMatrix id = IntMatrix::identity(n);
  for (const auto& p : certificate_primes()) {
    IntMatrix nil = reduce_mod(pow_mod(g, m, p) - id, p);
    if (!pow_mod(nil, Integer(static_cast<unsigned long>(n)), p).is_zero()) return false;
  }
  return nilpotent_power_vanishes(g.power(m) - id);
}

EntropyClassification classify_entropy(const IntMatrix& g, const Rational& width) {
  if (!g.square()) throw PreconditionError("classification needs a square matrix");
  if (!is_unimodular(g)) throw PreconditionError("classification needs a unimodular matrix (det = " +
                                                 to_string(determinant(g)) + ")");
  EntropyClassification out;
  CyclotomicSplit split = strip_cyclotomic_factors(char_poly(g));
  out.cyclotomic_profile = split.profile;
  out.residual = split.residual;
  if (!split.residual.is_constant()) {
    out.kind = EntropyKind::PositiveEntropy;
    out.spectral_radius = max_root_modulus(split.residual, width);
    return out;
  }
  Integer order = 1;
  for (const auto& f : split.profile) order = lcm(order, Integer(static_cast<unsigned long>(f.order)));
  bool only_one = std::all_of(split.profile.begin(), split.profile.end(),
                              [](const CyclotomicFactor& f) { return f.order == 1; });
  out.kind = only_one ? EntropyKind::Unipotent : EntropyKind::QuasiUnipotent;
  out.quasi_order = order;
  if (!nilpotent_power_vanishes(g.power(order) - IntMatrix::identity(g.dim())))
    throw std::logic_error("cyclotomic classification contradicted by (g^d - I)^n != 0");
  return out;
}

RealInterval spectral_radius(const IntMatrix& m, const Rational& width) {
  IntPolynomial f = char_poly(m);
  std::size_t low = 0;
  while (low < f.coefficients().size() && f.coeff(low) == 0) ++low;
  IntPolynomial g(std::vector<Integer>(f.coefficients().begin() + static_cast<std::ptrdiff_t>(low),
                                       f.coefficients().end()));
  if (g.degree() <= 0) return RealInterval::point(0);
  if (abs(g.coeff(0)) == 1) {
    CyclotomicSplit split = strip_unchecked(g);
    if (split.residual.is_constant()) return RealInterval::point(1);
    return max_root_modulus(split.residual, width);
  }
  return max_root_modulus(g, width);
}

// ---- Graded representations ------------------------------------------------

std::size_t GradedRepresentation::generator_count() const {
  return degrees.empty() ? 0 : degrees.begin()->second.size();
}

const IntMatrix& GradedRepresentation::matrix(unsigned k, std::size_t generator) const {
  auto it = degrees.find(k);
  if (it == degrees.end()) throw PreconditionError("graded representation has no degree " + std::to_string(k));
  return it->second.at(generator);
}

GradedRepresentation exterior_model(const std::vector<IntMatrix>& generators, unsigned n) {
  if (generators.empty()) throw PreconditionError("exterior model needs at least one generator");
  std::size_t r = generators.front().dim();
  if (n < 1 || n > r)
    throw PreconditionError("exterior model needs 1 <= n <= rank (n = " + std::to_string(n) +
                            ", rank = " + std::to_string(r) + ")");
  GradedRepresentation rep;
  rep.n = n;
  for (unsigned k = 0; k <= n; ++k) {
    auto& mats = rep.degrees[k];
    for (const auto& g : generators) {
      if (k == 0) {
        mats.push_back(IntMatrix::identity(1));
      } else if (k == n && n != r) {
        mats.push_back(IntMatrix::identity(1));
      } else {
        mats.push_back(exterior_power(g, k));
      }
    }
  }
  return rep;
}

std::vector<std::string> validate_graded(const GradedRepresentation& rep,
                                         const std::vector<IntMatrix>& generators, std::uint64_t seed,
                                         std::size_t samples, std::size_t max_word_length) {
  std::vector<std::string> problems;
  for (unsigned k = 0; k <= rep.n; ++k)
    if (!rep.degrees.count(k)) problems.push_back("missing degree " + std::to_string(k));
  for (const auto& [k, mats] : rep.degrees) {
    std::string where = "degree " + std::to_string(k);
    if (k > rep.n) problems.push_back(where + " exceeds n = " + std::to_string(rep.n));
    if (mats.size() != generators.size()) {
      problems.push_back(where + " has " + std::to_string(mats.size()) + " matrices, expected " +
                         std::to_string(generators.size()));
      continue;
    }
    if (mats.empty()) continue;
    std::size_t size = mats.front().rows();
    for (std::size_t i = 0; i < mats.size(); ++i) {
      const auto& m = mats[i];
      std::string gw = where + " generator " + std::to_string(i);
      if (!m.square() || m.rows() != size) {
        problems.push_back(gw + " has inconsistent size (expected " + std::to_string(size) + "x" +
                           std::to_string(size) + ")");
        continue;
      }
      if ((k == 0 || k == rep.n) && size != 1) problems.push_back(gw + " must be 1x1");
      if (!is_unimodular(m)) problems.push_back(gw + " is not unimodular");
      if (k == 1 && !(m == generators[i])) problems.push_back(gw + " differs from the generator");
    }
  }
  if (!problems.empty() || generators.empty()) return problems;

  // Relation spot check on seeded random words.
  std::mt19937_64 rng(seed);
  std::size_t g = generators.size();
  std::map<unsigned, std::vector<IntMatrix>> inverses;
  for (const auto& [k, mats] : rep.degrees)
    for (const auto& m : mats) inverses[k].push_back(unimodular_inverse(m));
  std::vector<std::vector<std::size_t>> words;
  for (std::size_t s = 0; s < samples; ++s) {
    std::size_t len = 1 + rng() % max_word_length;
    std::vector<std::size_t> w(len);
    for (auto& letter : w) letter = rng() % (2 * g);
    words.push_back(std::move(w));
  }
  // Commuted and inverse-cancelled variants make collisions likely in
  // abelian or finite images, which is where a broken grading shows up.
  std::size_t base = words.size();
  for (std::size_t s = 0; s < base; ++s) {
    auto w = words[s];
    std::reverse(w.begin(), w.end());
    words.push_back(w);
    auto v = words[s];
    v.push_back(v.front() ^ 1);
    v.insert(v.begin(), v.front());
    words.push_back(v);
  }
  auto evaluate_word = [&](unsigned k, const std::vector<std::size_t>& w) {
    const auto& mats = rep.degrees.at(k);
    IntMatrix acc = IntMatrix::identity(mats.front().rows());
    for (auto letter : w) acc = acc * ((letter & 1) ? inverses.at(k)[letter / 2] : mats[letter / 2]);
    return acc;
  };
  std::map<std::string, std::size_t> seen;  // degree-1 image -> first word index
  for (std::size_t s = 0; s < words.size(); ++s) {
    std::string key = to_string(evaluate_word(1, words[s]));
    auto [it, fresh] = seen.emplace(key, s);
    if (fresh) continue;
    for (const auto& [k, mats] : rep.degrees) {
      if (k == 1) continue;
      if (!(evaluate_word(k, words[s]) == evaluate_word(k, words[it->second]))) {
        problems.push_back("degree " + std::to_string(k) +
                           " is not a function of the degree-1 image (sampled words disagree)");
        return problems;
      }
    }
  }
  return problems;
}

std::vector<RealInterval> dynamical_degrees(const GradedRepresentation& rep, std::size_t generator,
                                            const Rational& width) {
  std::vector<RealInterval> out;
  for (unsigned k = 0; k <= rep.n; ++k) out.push_back(spectral_radius(rep.matrix(k, generator), width));
  return out;
}

std::vector<RealInterval> dynamical_degrees(const IntMatrix& g, unsigned n, const Rational& width) {
  if (!is_unimodular(g)) throw PreconditionError("dynamical degrees need a unimodular generator");
  return dynamical_degrees(exterior_model({g}, n), 0, width);
}

bool DegreeInequalityReport::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const DegreeCheck& c) { return c.verdict == Decision::True; });
}

DegreeInequalityReport check_degree_inequalities(const GradedRepresentation& rep, const Rational& width,
                                                 unsigned refinements) {
  DegreeInequalityReport report;
  report.final_width = width;
  for (std::size_t gi = 0; gi < rep.generator_count(); ++gi) {
    bool zero_entropy = classify_entropy(rep.matrix(1, gi), width).kind != EntropyKind::PositiveEntropy;
    Rational w = width;
    std::vector<RealInterval> d;
    std::vector<DegreeCheck> checks;
    for (unsigned attempt = 0;; ++attempt) {
      d = dynamical_degrees(rep, gi, w);
      checks.clear();
      // k = 1 is the identity d_1 <= d_1 and is not worth an interval comparison.
      for (unsigned k = 2; k <= rep.n; ++k)
        checks.push_back({gi, k, "d_k <= d_1^k", less_equal(d[k], power_nonnegative(d[1], k))});
      for (unsigned k = 1; k < rep.n; ++k)
        checks.push_back({gi, k, "d_k^2 >= d_{k-1} d_{k+1}",
                          less_equal(multiply_nonnegative(d[k - 1], d[k + 1]), power_nonnegative(d[k], 2))});
      if (zero_entropy)
        for (unsigned k = 0; k <= rep.n; ++k)
          checks.push_back({gi, k, "d_k <= 1", less_equal(d[k], RealInterval::point(1))});
      bool undecided = std::any_of(checks.begin(), checks.end(),
                                   [](const DegreeCheck& c) { return c.verdict == Decision::Undecided; });
      if (!undecided || attempt >= refinements) break;
      w /= 256;
    }
    if (w < report.final_width) report.final_width = w;
    report.degrees.push_back(std::move(d));
    report.checks.insert(report.checks.end(), checks.begin(), checks.end());
  }
  return report;
}

}  // namespace zeroent
