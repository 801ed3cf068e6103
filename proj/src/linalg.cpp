#include "dlat/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace dlat {

RowEchelon row_reduce(RatMatrix a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<std::size_t> pivots;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    std::size_t found = rows;
    for (std::size_t r = pivot_row; r < rows; ++r) {
      if (sgn(a(r, c)) != 0) {
        found = r;
        break;
      }
    }
    if (found == rows) continue;
    if (found != pivot_row) {
      for (std::size_t k = 0; k < cols; ++k) std::swap(a(found, k), a(pivot_row, k));
    }
    const Rat inv = 1 / a(pivot_row, c);
    for (std::size_t k = c; k < cols; ++k) a(pivot_row, k) *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pivot_row || sgn(a(r, c)) == 0) continue;
      const Rat factor = a(r, c);
      for (std::size_t k = c; k < cols; ++k) a(r, k) -= factor * a(pivot_row, k);
    }
    pivots.push_back(c);
    ++pivot_row;
  }
  return {std::move(a), std::move(pivots)};
}

std::size_t rank(const RatMatrix& a) { return row_reduce(a).pivot_columns.size(); }

std::vector<RatVector> kernel_basis(const RatMatrix& a) {
  const RowEchelon ech = row_reduce(a);
  const std::size_t cols = a.cols();
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : ech.pivot_columns) is_pivot[c] = true;

  std::vector<RatVector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RatVector v = zeros(cols);
    v[free] = 1;
    for (std::size_t r = 0; r < ech.pivot_columns.size(); ++r) {
      v[ech.pivot_columns[r]] = -ech.reduced(r, free);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b) {
  if (b.size() != a.rows()) {
    throw std::invalid_argument("solve: right-hand side has length " + std::to_string(b.size()) +
                                " but matrix has " + std::to_string(a.rows()) + " rows");
  }
  const std::size_t cols = a.cols();
  RatMatrix aug(a.rows(), cols + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) aug(r, c) = a(r, c);
    aug(r, cols) = b[r];
  }
  const RowEchelon ech = row_reduce(std::move(aug));
  if (!ech.pivot_columns.empty() && ech.pivot_columns.back() == cols) return std::nullopt;
  RatVector v = zeros(cols);
  for (std::size_t r = 0; r < ech.pivot_columns.size(); ++r) {
    v[ech.pivot_columns[r]] = ech.reduced(r, cols);
  }
  return v;
}

bool in_span(const std::vector<RatVector>& vectors, const RatVector& x) {
  if (vectors.empty()) return is_zero(x);
  return solve(RatMatrix::from_columns(vectors, x.size()), x).has_value();
}

}  // namespace dlat
