#include "zeroent/cone.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "zeroent/errors.hpp"
#include "zeroent/linalg.hpp"
#include "zeroent/lp.hpp"
#include "zeroent/spectral.hpp"

namespace zeroent {

namespace {

Rational dot(const RatVector& a, const RatVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RatVector primitive(const RatVector& v) {
  auto p = primitive_direction(v);
  return RatVector(p.begin(), p.end());
}

RatMatrix rows_matrix(const std::vector<RatVector>& rows, std::size_t cols) {
  std::vector<Rational> e;
  for (const auto& r : rows) e.insert(e.end(), r.begin(), r.end());
  return RatMatrix(rows.size(), cols, std::move(e));
}

bool is_zero_vector(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

}  // namespace

bool PolyhedralCone::contains(const RatVector& x) const {
  return std::all_of(facets.begin(), facets.end(), [&](const RatVector& f) { return dot(f, x) >= 0; });
}

bool PolyhedralCone::interior(const RatVector& x) const {
  return std::all_of(facets.begin(), facets.end(), [&](const RatVector& f) { return dot(f, x) > 0; });
}

PolyhedralCone cone_from_rays(const std::vector<RatVector>& rays) {
  if (rays.empty()) throw PreconditionError("a cone needs at least one ray");
  PolyhedralCone c;
  c.dim = rays.front().size();
  if (c.dim == 0) throw PreconditionError("a cone needs positive dimension");
  std::vector<RatVector> unique;
  std::set<RatVector> seen;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (rays[i].size() != c.dim) throw PreconditionError("ray " + std::to_string(i + 1) + " has the wrong length");
    if (is_zero_vector(rays[i]) || !seen.insert(primitive(rays[i])).second) {
      c.redundant_rays.push_back(rays[i]);
      continue;
    }
    unique.push_back(primitive(rays[i]));
  }
  if (rank(unique) < c.dim) throw PreconditionError("rays do not span; the cone is not full-dimensional");

  std::set<RatVector> found;
  for (const auto& subset : k_subsets(unique.size(), c.dim - 1)) {
    std::vector<RatVector> face;
    for (std::size_t i : subset) face.push_back(unique[i]);
    std::vector<RatVector> normal =
        face.empty() ? RatMatrix::identity(c.dim).to_rows() : nullspace(rows_matrix(face, c.dim));
    if (normal.size() != 1) continue;
    bool pos = false, neg = false;
    for (const auto& r : unique) {
      Rational s = dot(normal.front(), r);
      pos = pos || s > 0;
      neg = neg || s < 0;
    }
    if (pos && neg) continue;
    RatVector f = primitive(normal.front());
    if (neg)
      for (auto& x : f) x = -x;
    if (found.insert(f).second) c.facets.push_back(f);
  }
  if (rank(c.facets) < c.dim) throw PreconditionError("the cone contains a line (not salient)");

  for (const auto& r : unique) {
    std::vector<RatVector> tight;
    for (const auto& f : c.facets)
      if (dot(f, r) == 0) tight.push_back(f);
    if (rank(tight) + 1 == c.dim)
      c.rays.push_back(r);
    else
      c.redundant_rays.push_back(r);
  }
  return c;
}

PolyhedralCone dual(const PolyhedralCone& c) { return cone_from_rays(c.facets); }

bool preserves_cone(const RatMatrix& f, const PolyhedralCone& c) {
  if (!f.square() || f.dim() != c.dim) throw PreconditionError("map and cone dimensions differ");
  if (determinant(f) == 0) throw PreconditionError("cone preservation needs an invertible map");
  RatMatrix finv = inverse(f);
  return std::all_of(c.rays.begin(), c.rays.end(),
                     [&](const RatVector& r) { return c.contains(f.apply(r)) && c.contains(finv.apply(r)); });
}

InteriorFixedResult interior_fixed_vector(const RatMatrix& f, const Rational& q, const PolyhedralCone& c) {
  if (q <= 0) throw PreconditionError("q must be positive");
  if (!preserves_cone(f, c)) throw PreconditionError("the map does not preserve the cone");
  InteriorFixedResult out;
  out.kernel = nullspace(f - q * RatMatrix::identity(c.dim));
  if (out.kernel.empty()) return out;
  std::vector<Rational> e;
  for (const auto& facet : c.facets)
    for (const auto& k : out.kernel) e.push_back(dot(facet, k));
  StrictFeasibility lp = strictly_feasible(RatMatrix(c.facets.size(), out.kernel.size(), std::move(e)));
  if (lp.certificate) {
    out.certificate = lp.certificate;
    return out;
  }
  RatVector x(c.dim);
  for (std::size_t j = 0; j < out.kernel.size(); ++j)
    for (std::size_t i = 0; i < c.dim; ++i) x[i] += (*lp.point)[j] * out.kernel[j][i];
  out.vector = primitive(x);
  return out;
}

bool roots_on_unit_circle(const RatPolynomial& p) {
  if (p.is_zero()) throw PreconditionError("the zero polynomial has no roots to test");
  if (p.coeff(0) == 0) return false;
  RatPolynomial rest = make_monic(p);
  for (Rational root : {Rational(1), Rational(-1)})
    for (;;) {
      auto [quot, rem] = divmod(rest, RatPolynomial::linear(root));
      if (!rem.is_zero()) break;
      rest = quot;
    }
  int m = rest.degree();
  if (m == 0) return true;
  if (m % 2) return false;
  for (int k = 0; k <= m; ++k)
    if (rest.coeff(k) != rest.coeff(m - k)) return false;
  // rest(z) = z^(m/2) h(z + 1/z), with z^j + z^-j = D_j(w).
  int half = m / 2;
  RatPolynomial w({Rational(0), Rational(1)});
  RatPolynomial d_prev = RatPolynomial::constant(2), d_cur = w;
  RatPolynomial h = RatPolynomial::constant(rest.coeff(half));
  for (int j = 1; j <= half; ++j) {
    h = h + rest.coeff(half + j) * d_cur;
    RatPolynomial d_next = w * d_cur - d_prev;
    d_prev = d_cur;
    d_cur = d_next;
  }
  RatPolynomial sf = squarefree_part(h);
  return SturmSequence(sf).count_roots(-2, 2) == static_cast<std::size_t>(sf.degree());
}

PowerBoundedness power_bounded_exact(const RatMatrix& f, const Rational& q) {
  if (!f.square()) throw PreconditionError("power boundedness needs a square matrix");
  if (q <= 0) throw PreconditionError("q must be positive");
  if (determinant(f) == 0) throw PreconditionError("power boundedness needs an invertible map");
  PowerBoundedness out;
  RatPolynomial mp = minimal_poly(f);
  out.diagonalizable = gcd(mp, mp.derivative()).degree() == 0;
  auto integral = to_integer(f);
  if (q == 1 && integral) {
    IntPolynomial cp = char_poly(*integral);
    out.eigen_moduli_all_q = abs(cp.coeff(0)) == 1 && strip_cyclotomic_factors(cp).residual.is_constant();
  } else {
    out.eigen_moduli_all_q = roots_on_unit_circle(char_poly(Rational(1) / q * f));
  }
  out.bounded = out.diagonalizable && out.eigen_moduli_all_q;
  return out;
}

Rational max_row_sum_norm(const RatMatrix& m) {
  Rational best = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += abs(m(i, j));
    best = std::max(best, s);
  }
  return best;
}

ConeMapAnalysis meng_zhang_report(const RatMatrix& f, const Rational& q, const PolyhedralCone& c,
                                  unsigned sample_range) {
  ConeMapAnalysis out;
  out.q = q;
  out.sample_range = sample_range;
  out.preserves = preserves_cone(f, c);
  if (!out.preserves) throw PreconditionError("the map does not preserve the cone");
  out.interior_fixed = interior_fixed_vector(f, q, c).vector;
  out.power = power_bounded_exact(f, q);

  std::size_t n = f.dim();
  RatMatrix finv = inverse(f);
  RatMatrix forward = RatMatrix::identity(n), backward = RatMatrix::identity(n);
  Rational qi = 1;
  out.numeric_iterate_bound = 1;
  out.ratio_at_range = 1;
  for (unsigned i = 1; i <= sample_range; ++i) {
    forward = forward * f;
    backward = backward * finv;
    qi *= q;
    Rational a = max_row_sum_norm(forward) / qi;
    Rational b = max_row_sum_norm(backward) * qi;
    out.numeric_iterate_bound = std::max({out.numeric_iterate_bound, a, b});
    if (i == sample_range) out.ratio_at_range = std::max(a, b);
  }
  out.criteria_agree = out.interior_fixed.has_value() == out.power.bounded;
  out.flagged = !out.power.bounded && out.ratio_at_range <= kGrowthThreshold;
  return out;
}

std::optional<std::size_t> finite_group_order(const std::vector<IntMatrix>& generators, std::size_t cap) {
  if (generators.empty()) return 1;
  using Key = std::vector<Integer>;
  auto key = [](const IntMatrix& m) { return Key(m.entries().begin(), m.entries().end()); };
  std::set<Key> seen;
  std::deque<IntMatrix> queue{IntMatrix::identity(generators.front().dim())};
  seen.insert(key(queue.front()));
  while (!queue.empty()) {
    IntMatrix x = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : generators) {
      IntMatrix y = x * g;
      if (!seen.insert(key(y)).second) continue;
      if (seen.size() > cap) return std::nullopt;
      queue.push_back(std::move(y));
    }
  }
  return seen.size();
}

FujikiLiebermanReport fujiki_lieberman_pipeline(const MatrixGroupSpec& spec, std::size_t group_cap) {
  if (!spec.cone) throw PreconditionError("the pipeline needs a cone");
  if (!spec.fixed_classes || spec.fixed_classes->size() != spec.generators.size())
    throw PreconditionError("the pipeline needs one fixed class per generator");
  PolyhedralCone cone = cone_from_rays(*spec.cone);
  if (cone.dim != spec.r) throw PreconditionError("cone dimension differs from the lattice rank");

  FujikiLiebermanReport out;
  out.m_lcm = uniform_exponent(spec.r).m_lcm;
  PolyhedralCone nef = dual(cone);
  for (std::size_t gi = 0; gi < spec.generators.size(); ++gi) {
    const IntMatrix& gint = spec.generators[gi];
    if (!is_unimodular(gint))
      throw PreconditionError("generator " + std::to_string(gi + 1) + " is not unimodular");
    RatMatrix g = to_rational(gint);
    const RatVector& b = (*spec.fixed_classes)[gi];
    FujikiLiebermanGenerator rep;
    rep.preserves = preserves_cone(g, cone);
    auto record = [&](const std::string& step, bool ok, std::string detail) {
      rep.steps.push_back({step, ok, std::move(detail)});
      if (!ok && !out.failed_step) out.failed_step = step;
      return ok;
    };

    [&] {
      bool fixed = g.apply(b) == b;
      bool inside = cone.interior(b);
      if (!record("i", fixed && inside,
                  !fixed ? "g B != B"
                  : !inside ? "B is not in the interior of the cone"
                            : "g B = B with B interior"))
        return false;
      PowerBoundedness pb = power_bounded_exact(g, 1);
      if (!record("ii", pb.bounded,
                  !pb.diagonalizable ? "minimal polynomial is not squarefree, so ||g^i|| grows polynomially"
                  : !pb.eigen_moduli_all_q ? "an eigenvalue has modulus other than 1, so ||g^i|| grows exponentially"
                                           : "iterates bounded: diagonalizable with every eigenvalue of modulus 1"))
        return false;
      if (!rep.preserves) return record("iii", false, "g does not map the cone onto itself");
      auto fixed_nef = interior_fixed_vector(to_rational(unimodular_inverse(gint)).transpose(), 1, nef);
      if (!record("iii", fixed_nef.vector.has_value(),
                  fixed_nef.vector ? "interior fixed vector " + to_string(*fixed_nef.vector) + " in the dual cone"
                                   : "no interior fixed vector in the dual cone"))
        return false;
      bool identity = gint.power(out.m_lcm).is_identity();
      return record("iv", identity,
                    identity ? "g^" + out.m_lcm.get_str() + " = I" : "g^" + out.m_lcm.get_str() + " != I");
    }();
    out.generators.push_back(std::move(rep));
  }
  if (out.failed_step) {
    out.conclusion = "step (" + *out.failed_step + ") failed";
    return out;
  }
  out.image_order = finite_group_order(spec.generators, group_cap);
  if (!out.image_order) {
    out.failed_step = "v";
    out.conclusion = "image not certified finite within cap " + std::to_string(group_cap);
    return out;
  }
  out.success = true;
  out.conclusion =
      "kernel acts trivially on the lattice; virtually-in-Aut_0 conclusion holds at the lattice level";
  return out;
}

}  // namespace zeroent
