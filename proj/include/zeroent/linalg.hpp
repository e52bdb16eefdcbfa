#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "zeroent/matrix.hpp"
#include "zeroent/polynomial.hpp"

namespace zeroent {

// ---- Determinants, inverses, kernels ------------------------------------

/// Fraction-free (Bareiss) determinant.
Integer determinant(const IntMatrix& m);
Rational determinant(const RatMatrix& m);

bool is_unimodular(const IntMatrix& m);

/// Throws PreconditionError on a singular matrix.
RatMatrix inverse(const RatMatrix& m);

/// Integer inverse of a unimodular matrix; throws PreconditionError otherwise.
IntMatrix unimodular_inverse(const IntMatrix& m);

/// Integer matrix if every entry is integral.
std::optional<IntMatrix> to_integer(const RatMatrix& m);

std::size_t rank(const RatMatrix& m);
std::size_t rank(const std::vector<RatVector>& vectors);

/// Kernel basis from the reduced row echelon form: one vector per free column,
/// that column set to 1. Empty when the kernel is trivial.
std::vector<RatVector> nullspace(const RatMatrix& m);

/// Stacks vectors as the columns of a matrix.
RatMatrix from_columns(const std::vector<RatVector>& columns);

/// Flattens a matrix row-major into a vector.
RatVector flatten(const RatMatrix& m);
RatMatrix unflatten(const RatVector& v, std::size_t n);

/// Incrementally maintained reduced row echelon basis of a subspace of Q^d.
/// With the basis in RREF, the coordinates of a member vector are its entries
/// at the pivot columns.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t ambient) : ambient_(ambient) {}

  std::size_t ambient() const noexcept { return ambient_; }
  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }

  /// Inserts v if it is independent of the span; returns true on insertion.
  bool insert(const RatVector& v);
  bool contains(const RatVector& v) const;
  /// v minus its projection along pivots; zero iff v lies in the span.
  RatVector reduce(const RatVector& v) const;
  /// Coordinates of a member vector with respect to rows(); throws if not a member.
  RatVector coordinates(const RatVector& v) const;

  const std::vector<RatVector>& rows() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

 private:
  std::size_t ambient_;
  std::vector<RatVector> rows_;      // sorted by pivot column
  std::vector<std::size_t> pivots_;  // pivot column of each row
};

// ---- Polynomials attached to matrices -------------------------------------

/// det(xI - m), computed with the division-free Berkowitz recurrence so every
/// intermediate value stays in the ring of the entries.
IntPolynomial char_poly(const IntMatrix& m);
RatPolynomial char_poly(const RatMatrix& m);

/// Monic annihilating polynomial of least degree.
RatPolynomial minimal_poly(const RatMatrix& m);

/// p(m) by Horner's rule.
template <class T>
Matrix<T> evaluate(const Polynomial<T>& p, const Matrix<T>& m) {
  std::size_t n = m.dim();
  Matrix<T> acc(n, n);
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * m + (*it) * Matrix<T>::identity(n);
  return acc;
}

/// k-th compound matrix (all k-by-k minors, row and column subsets in
/// lexicographic order). k = 0 gives [1]; k = dim gives [det m].
IntMatrix exterior_power(const IntMatrix& m, std::size_t k);

/// Lexicographically ordered k-subsets of {0..n-1}.
std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k);

struct SquarefreeSplit {
  IntPolynomial gcd_with_derivative;  // primitive, positive leading coefficient
  IntPolynomial squarefree;           // f / gcd_with_derivative
};

/// gcd(f, f') and f / gcd(f, f') over Z[x]; throws PreconditionError on f = 0.
SquarefreeSplit poly_gcd_and_squarefree(const IntPolynomial& f);

/// Kronecker product a (x) b.
template <class T>
Matrix<T> kronecker(const Matrix<T>& a, const Matrix<T>& b) {
  std::size_t r = a.rows() * b.rows(), c = a.cols() * b.cols();
  std::vector<T> e(r * c);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          e[(i * b.rows() + k) * c + (j * b.cols() + l)] = a(i, j) * b(k, l);
  return Matrix<T>(r, c, std::move(e));
}

/// Companion matrix of a monic polynomial (subdiagonal ones, last column -c_k).
template <class T>
Matrix<T> companion(const Polynomial<T>& p) {
  if (!p.is_monic() || p.degree() < 1) throw std::invalid_argument("companion needs a monic non-constant polynomial");
  std::size_t n = static_cast<std::size_t>(p.degree());
  std::vector<T> e(n * n);
  for (std::size_t i = 1; i < n; ++i) e[i * n + (i - 1)] = 1;
  for (std::size_t i = 0; i < n; ++i) e[i * n + (n - 1)] = -p.coeff(i);
  return Matrix<T>(n, n, std::move(e));
}

/// Block-diagonal direct sum.
template <class T>
Matrix<T> direct_sum(const std::vector<Matrix<T>>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.dim();
  std::vector<T> e(n * n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.dim(); ++i)
      for (std::size_t j = 0; j < b.dim(); ++j) e[(off + i) * n + off + j] = b(i, j);
    off += b.dim();
  }
  return Matrix<T>(n, n, std::move(e));
}

}  // namespace zeroent
