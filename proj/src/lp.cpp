#include "zeroent/lp.hpp"

#include <stdexcept>

namespace zeroent {

std::optional<RatVector> nonnegative_solution(const RatMatrix& m, const RatVector& d) {
  std::size_t rows = m.rows(), cols = m.cols();
  if (d.size() != rows) throw std::invalid_argument("right-hand side has the wrong length");
  // Tableau [m | I | d] with one artificial per row; rows flipped so d >= 0.
  std::size_t width = cols + rows + 1;
  std::vector<RatVector> t(rows, RatVector(width));
  for (std::size_t i = 0; i < rows; ++i) {
    Rational sign = d[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < cols; ++j) t[i][j] = sign * m(i, j);
    t[i][cols + i] = 1;
    t[i][width - 1] = sign * d[i];
  }
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) basis[i] = cols + i;

  // Minimize the sum of artificials; reduced costs kept in `cost`.
  RatVector cost(width);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < width; ++j)
      if (j < cols || j == width - 1) cost[j] -= t[i][j];

  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (enter == width) break;
    std::size_t leave = rows;
    Rational best;
    for (std::size_t i = 0; i < rows; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][width - 1] / t[i][enter];
      if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == rows) throw std::logic_error("phase-one objective is bounded below; unbounded ray impossible");
    Rational piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rational f = t[i][enter];
      for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * t[leave][j];
    }
    Rational f = cost[enter];
    for (std::size_t j = 0; j < width; ++j) cost[j] -= f * t[leave][j];
    basis[leave] = enter;
  }
  if (cost[width - 1] != 0) return std::nullopt;
  RatVector z(cols);
  for (std::size_t i = 0; i < rows; ++i)
    if (basis[i] < cols) z[basis[i]] = t[i][width - 1];
  return z;
}

StrictFeasibility strictly_feasible(const RatMatrix& a) {
  std::size_t rows = a.rows(), cols = a.cols();
  StrictFeasibility out;
  // a c+ - a c- - s = 1 with c+, c-, s >= 0.
  std::size_t w = 2 * cols + rows;
  std::vector<Rational> p(rows * w);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      p[i * w + j] = a(i, j);
      p[i * w + cols + j] = -a(i, j);
    }
    p[i * w + 2 * cols + i] = -1;
  }
  if (auto z = nonnegative_solution(RatMatrix(rows, w, std::move(p)), RatVector(rows, Rational(1)))) {
    RatVector c(cols);
    for (std::size_t j = 0; j < cols; ++j) c[j] = (*z)[j] - (*z)[cols + j];
    out.point = std::move(c);
    return out;
  }
  // a^T y = 0, sum y = 1, y >= 0.
  std::vector<Rational> e((cols + 1) * rows);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) e[j * rows + i] = a(i, j);
  for (std::size_t i = 0; i < rows; ++i) e[cols * rows + i] = 1;
  RatVector rhs(cols + 1);
  rhs[cols] = 1;
  out.certificate = nonnegative_solution(RatMatrix(cols + 1, rows, std::move(e)), rhs);
  if (!out.certificate) throw std::logic_error("neither a strict point nor a Farkas certificate exists");
  return out;
}

}  // namespace zeroent
