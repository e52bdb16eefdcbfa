#include "zeroent/linalg.hpp"

#include <algorithm>
#include <utility>

#include "zeroent/errors.hpp"

namespace zeroent {

namespace {

using RatRows = std::vector<RatVector>;

/// In-place reduced row echelon form with pivots searched among the first
/// `cols` columns (trailing columns ride along); returns the pivot columns.
std::vector<std::size_t> rref_in_place(RatRows& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t j = c; j < rows[i].size(); ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class T>
Polynomial<T> berkowitz(const Matrix<T>& m) {
  std::size_t n = m.dim();
  if (n == 0) return Polynomial<T>::constant(T(1));
  // Coefficients highest degree first while iterating.
  std::vector<T> cp{T(1), T(-m(n - 1, n - 1))};
  for (std::size_t i = n - 1; i-- > 0;) {
    std::size_t s = n - 1 - i;  // size of trailing block
    std::vector<T> t(s + 2);
    t[0] = 1;
    t[1] = -m(i, i);
    // v = C, then repeatedly M * v; t[k+2] = -R * M^k * C.
    std::vector<T> v(s);
    for (std::size_t a = 0; a < s; ++a) v[a] = m(i + 1 + a, i);
    for (std::size_t k = 0; k < s; ++k) {
      T dot = 0;
      for (std::size_t a = 0; a < s; ++a) dot += m(i, i + 1 + a) * v[a];
      t[k + 2] = -dot;
      if (k + 1 < s) {
        std::vector<T> w(s);
        for (std::size_t a = 0; a < s; ++a)
          for (std::size_t b = 0; b < s; ++b) w[a] += m(i + 1 + a, i + 1 + b) * v[b];
        v = std::move(w);
      }
    }
    std::vector<T> next(s + 2);
    for (std::size_t r = 0; r < s + 2; ++r)
      for (std::size_t c = 0; c <= std::min(r, s); ++c) next[r] += t[r - c] * cp[c];
    cp = std::move(next);
  }
  std::reverse(cp.begin(), cp.end());
  return Polynomial<T>(std::move(cp));
}

}  // namespace

Integer determinant(const IntMatrix& m) {
  std::size_t n = m.dim();
  if (n == 0) return 1;
  std::vector<Integer> a(m.entries().begin(), m.entries().end());
  auto at = [&](std::size_t i, std::size_t j) -> Integer& { return a[i * n + j]; };
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        mpz_divexact(at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

Rational determinant(const RatMatrix& m) {
  std::size_t n = m.dim();
  RatRows rows = m.to_rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && rows[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(rows[p], rows[c]);
      det = -det;
    }
    det *= rows[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (rows[i][c] == 0) continue;
      Rational f = rows[i][c] / rows[c][c];
      for (std::size_t j = c; j < n; ++j) rows[i][j] -= f * rows[c][j];
    }
  }
  return det;
}

bool is_unimodular(const IntMatrix& m) {
  if (!m.square()) return false;
  return abs(determinant(m)) == 1;
}

RatMatrix inverse(const RatMatrix& m) {
  std::size_t n = m.dim();
  RatRows rows(n, RatVector(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = m(i, j);
    rows[i][n + i] = 1;
  }
  auto pivots = rref_in_place(rows, n);
  if (pivots.size() != n) throw PreconditionError("matrix is singular");
  std::vector<Rational> e;
  e.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e.push_back(rows[i][n + j]);
  return RatMatrix(n, n, std::move(e));
}

std::optional<IntMatrix> to_integer(const RatMatrix& m) {
  std::vector<Integer> e;
  e.reserve(m.entries().size());
  for (const auto& x : m.entries()) {
    if (x.get_den() != 1) return std::nullopt;
    e.push_back(x.get_num());
  }
  return IntMatrix(m.rows(), m.cols(), std::move(e));
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  if (!is_unimodular(m)) throw PreconditionError("matrix is not unimodular");
  auto inv = to_integer(inverse(to_rational(m)));
  return *inv;
}

std::size_t rank(const RatMatrix& m) {
  RatRows rows = m.to_rows();
  return rref_in_place(rows, m.cols()).size();
}

std::size_t rank(const std::vector<RatVector>& vectors) {
  if (vectors.empty()) return 0;
  RatRows rows = vectors;
  return rref_in_place(rows, rows.front().size()).size();
}

std::vector<RatVector> nullspace(const RatMatrix& m) {
  std::size_t cols = m.cols();
  RatRows rows = m.to_rows();
  auto pivots = rref_in_place(rows, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVector x(cols);
    x[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -rows[i][f];
    basis.push_back(std::move(x));
  }
  return basis;
}

RatMatrix from_columns(const std::vector<RatVector>& columns) {
  if (columns.empty()) return RatMatrix();
  std::size_t r = columns.front().size();
  std::vector<Rational> e(r * columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t i = 0; i < r; ++i) e[i * columns.size() + j] = columns[j][i];
  return RatMatrix(r, columns.size(), std::move(e));
}

RatVector flatten(const RatMatrix& m) { return RatVector(m.entries().begin(), m.entries().end()); }

RatMatrix unflatten(const RatVector& v, std::size_t n) { return RatMatrix(n, n, v); }

// ---- EchelonBasis ---------------------------------------------------------

RatVector EchelonBasis::reduce(const RatVector& v) const {
  RatVector r = v;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    std::size_t p = pivots_[i];
    if (r[p] == 0) continue;
    Rational f = r[p];
    for (std::size_t j = p; j < ambient_; ++j)
      if (rows_[i][j] != 0) r[j] -= f * rows_[i][j];
  }
  return r;
}

bool EchelonBasis::contains(const RatVector& v) const {
  auto r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](const Rational& x) { return x == 0; });
}

bool EchelonBasis::insert(const RatVector& v) {
  if (v.size() != ambient_) throw std::invalid_argument("vector length does not match the ambient space");
  RatVector r = reduce(v);
  std::size_t p = 0;
  while (p < ambient_ && r[p] == 0) ++p;
  if (p == ambient_) return false;
  Rational inv = 1 / r[p];
  for (std::size_t j = p; j < ambient_; ++j) r[j] *= inv;
  for (auto& row : rows_) {
    if (row[p] == 0) continue;
    Rational f = row[p];
    for (std::size_t j = p; j < ambient_; ++j) row[j] -= f * r[j];
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
  auto idx = pos - pivots_.begin();
  pivots_.insert(pos, p);
  rows_.insert(rows_.begin() + idx, std::move(r));
  return true;
}

RatVector EchelonBasis::coordinates(const RatVector& v) const {
  if (!contains(v)) throw PreconditionError("vector is not in the span");
  RatVector c(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) c[i] = v[pivots_[i]];
  return c;
}

// ---- Characteristic and minimal polynomials ----------------------------------

IntPolynomial char_poly(const IntMatrix& m) { return berkowitz(m); }

RatPolynomial char_poly(const RatMatrix& m) { return berkowitz(m); }

RatPolynomial minimal_poly(const RatMatrix& m) {
  std::size_t n = m.dim();
  // Krylov sequence I, m, m^2, ... in the flattened space, with each stored
  // row remembering which combination of powers it came from.
  struct Row {
    RatVector vec;
    RatVector combo;
    std::size_t pivot;
  };
  std::vector<Row> rows;
  RatMatrix power = RatMatrix::identity(n);
  for (std::size_t k = 0; k <= n; ++k) {
    RatVector v = flatten(power);
    RatVector combo(k + 1);
    combo[k] = 1;
    for (const auto& row : rows) {
      if (v[row.pivot] == 0) continue;
      Rational f = v[row.pivot];
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * row.vec[j];
      for (std::size_t j = 0; j < row.combo.size(); ++j) combo[j] -= f * row.combo[j];
    }
    std::size_t p = 0;
    while (p < v.size() && v[p] == 0) ++p;
    if (p == v.size()) return RatPolynomial(std::move(combo));
    Rational inv = 1 / v[p];
    for (auto& x : v) x *= inv;
    for (auto& x : combo) x *= inv;
    rows.push_back({std::move(v), std::move(combo), p});
    power = power * m;
  }
  throw std::logic_error("minimal polynomial search exceeded the Cayley-Hamilton bound");
}

// ---- Compound matrices ----------------------------------------------------

std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

IntMatrix exterior_power(const IntMatrix& m, std::size_t k) {
  std::size_t n = m.dim();
  if (k > n) throw PreconditionError("exterior power degree exceeds the matrix dimension");
  auto subsets = k_subsets(n, k);
  std::size_t N = subsets.size();
  std::vector<Integer> e(N * N);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) {
      std::vector<Integer> minor;
      minor.reserve(k * k);
      for (auto i : subsets[a])
        for (auto j : subsets[b]) minor.push_back(m(i, j));
      e[a * N + b] = determinant(IntMatrix(k, k, std::move(minor)));
    }
  return IntMatrix(N, N, std::move(e));
}

SquarefreeSplit poly_gcd_and_squarefree(const IntPolynomial& f) {
  if (f.is_zero()) throw PreconditionError("gcd with derivative of the zero polynomial");
  RatPolynomial rf = to_rational(f);
  IntPolynomial g = primitive_part(gcd(rf, rf.derivative()));
  auto q = divide_exact(f, g);
  if (!q) throw std::logic_error("primitive gcd failed to divide exactly");
  return {std::move(g), std::move(*q)};
}

}  // namespace zeroent
