#pragma once

#include <cstddef>
#include <vector>

#include "dlat/rational.hpp"

namespace dlat {

// Dense row-major rational matrix with fixed dimensions.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);

  // `cols` is needed so that an empty row list still has a width.
  static RatMatrix from_rows(const std::vector<RatVector>& rows, std::size_t cols);
  static RatMatrix from_columns(const std::vector<RatVector>& columns, std::size_t rows);
  static RatMatrix identity(std::size_t n);
  static RatMatrix diagonal(const RatVector& entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rat& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rat& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RatVector row(std::size_t r) const;
  RatVector column(std::size_t c) const;
  RatMatrix transposed() const;
  RatMatrix select_columns(const std::vector<std::size_t>& columns) const;
  // Stacks `other` below this matrix; widths must agree.
  RatMatrix stacked(const RatMatrix& other) const;

  RatVector operator*(const RatVector& v) const;
  RatMatrix operator*(const RatMatrix& other) const;

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

}  // namespace dlat
