#pragma once

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "zeroent/number.hpp"

namespace zeroent {

/// Dense row-major matrix over an exact ring. Values are immutable once
/// built; every operation returns a fresh matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
      throw std::invalid_argument("matrix entry count does not match its shape");
  }

  static Matrix identity(std::size_t n) {
    std::vector<T> e(n * n);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
    return Matrix(n, n, std::move(e));
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    std::vector<T> e;
    e.reserve(rows.size() * cols);
    for (const auto& r : rows) {
      if (r.size() != cols) throw std::invalid_argument("ragged matrix rows");
      e.insert(e.end(), r.begin(), r.end());
    }
    return Matrix(rows.size(), cols, std::move(e));
  }

  static Matrix from_rows(std::initializer_list<std::initializer_list<T>> rows) {
    std::vector<std::vector<T>> v;
    for (const auto& r : rows) v.emplace_back(r);
    return from_rows(v);
  }

  static Matrix diagonal(const std::vector<T>& diag) {
    std::size_t n = diag.size();
    std::vector<T> e(n * n);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = diag[i];
    return Matrix(n, n, std::move(e));
  }

  /// Matrix unit E_{ij} (zero-based indices) scaled by `value`.
  static Matrix unit(std::size_t n, std::size_t i, std::size_t j, const T& value = T(1)) {
    std::vector<T> e(n * n);
    e[i * n + j] = value;
    return Matrix(n, n, std::move(e));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  std::size_t dim() const {
    if (!square()) throw std::invalid_argument("matrix is not square");
    return rows_;
  }

  const T& operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return entries_[i * cols_ + j];
  }

  std::span<const T> entries() const noexcept { return entries_; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(entries_.begin() + i * cols_, entries_.begin() + (i + 1) * cols_);
  }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  std::vector<std::vector<T>> to_rows() const {
    std::vector<std::vector<T>> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = row(i);
    return out;
  }

  bool is_zero() const {
    for (const auto& x : entries_)
      if (x != 0) return false;
    return true;
  }

  bool is_identity() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }

  bool is_upper_unitriangular() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
      if ((*this)(i, i) != 1) return false;
      for (std::size_t j = 0; j < i; ++j)
        if ((*this)(i, j) != 0) return false;
    }
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    std::vector<T> e(a.entries_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.entries_[i] + b.entries_[i];
    return Matrix(a.rows_, a.cols_, std::move(e));
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    std::vector<T> e(a.entries_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.entries_[i] - b.entries_[i];
    return Matrix(a.rows_, a.cols_, std::move(e));
  }

  friend Matrix operator-(const Matrix& a) {
    std::vector<T> e(a.entries_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = -a.entries_[i];
    return Matrix(a.rows_, a.cols_, std::move(e));
  }

  friend Matrix operator*(const T& s, const Matrix& a) {
    std::vector<T> e(a.entries_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = s * a.entries_[i];
    return Matrix(a.rows_, a.cols_, std::move(e));
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    std::vector<T> e(a.rows_ * b.cols_);
    T acc;
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a.entries_[i * a.cols_ + k];
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const T& bkj = b.entries_[k * b.cols_ + j];
          if (bkj != 0) e[i * b.cols_ + j] += aik * bkj;
        }
      }
    return Matrix(a.rows_, b.cols_, std::move(e));
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  Matrix transpose() const {
    std::vector<T> e(entries_.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) e[j * rows_ + i] = (*this)(i, j);
    return Matrix(cols_, rows_, std::move(e));
  }

  /// Non-negative power by repeated squaring.
  Matrix power(Integer exponent) const {
    if (exponent < 0) throw std::invalid_argument("negative matrix power");
    Matrix result = identity(dim());
    Matrix base = *this;
    while (exponent > 0) {
      if (mpz_odd_p(exponent.get_mpz_t())) result = result * base;
      exponent >>= 1;
      if (exponent > 0) base = base * base;
    }
    return result;
  }

  template <class U>
  Matrix<U> cast() const {
    std::vector<U> e(entries_.begin(), entries_.end());
    return Matrix<U>(rows_, cols_, std::move(e));
  }

 private:
  static void check_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> entries_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

inline RatMatrix to_rational(const IntMatrix& m) { return m.cast<Rational>(); }

/// Row-by-row rendering like [[1,0],[0,1]].
template <class T>
std::string to_string(const Matrix<T>& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ",";
      s += m(i, j).get_str();
    }
    s += "]";
  }
  return s + "]";
}

}  // namespace zeroent
