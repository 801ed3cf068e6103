#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dlat/matrix.hpp"

namespace dlat {

// Reduced row echelon form. Pivots are chosen left to right; within a column
// the first nonzero row at or below the current pivot row is used, which
// makes every derived result (kernel bases, particular solutions)
// deterministic.
struct RowEchelon {
  RatMatrix reduced;
  std::vector<std::size_t> pivot_columns;
};

RowEchelon row_reduce(RatMatrix a);

std::size_t rank(const RatMatrix& a);

// One vector per free column (in increasing column order): the free variable
// is 1, the other free variables 0.
std::vector<RatVector> kernel_basis(const RatMatrix& a);

// Some v with a * v == b, free variables set to zero; nullopt if the system
// is inconsistent. Throws std::invalid_argument on a length mismatch.
std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b);

bool in_span(const std::vector<RatVector>& vectors, const RatVector& x);

}  // namespace dlat
