#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "dlat/graph.hpp"
#include "dlat/rational.hpp"

namespace dlat {

// Nonnegative, nonzero vectors with pairwise disjoint supports.
struct NNDBasis {
  std::size_t dimension = 0;
  std::vector<RatVector> vectors;

  friend bool operator==(const NNDBasis&, const NNDBasis&) = default;
};

// offset + span(directions).
struct AffineSubspace {
  RatVector offset;
  std::vector<RatVector> directions;
};

// x, y lie in the linear part but max(x, y) does not (and therefore neither
// does min(x, y) = x + y - max(x, y)).
struct NotDistributive {
  RatVector x;
  RatVector y;
};

using NNDResult = std::variant<NNDBasis, NotDistributive>;

inline constexpr std::size_t kDefaultDimensionCap = 16;

bool is_nnd(const std::vector<RatVector>& vectors);

// Support-minimal nonzero vectors of span(directions), one per minimal
// support, in order of increasing support size and then lexicographic
// support. Exponential in the ambient dimension; throws CapacityError when it
// exceeds `cap`.
std::vector<RatVector> support_minimal_vectors(const std::vector<RatVector>& directions,
                                               std::size_t dimension,
                                               std::size_t cap = kDefaultDimensionCap);

// NND basis of the linear part of `s`, each vector scaled so that its
// lowest-index entry is 1, or a pair refuting closure under max.
NNDResult nnd_basis(const AffineSubspace& s, std::size_t cap = kDefaultDimensionCap);

// Forest-plus-loops digraph whose potential kernel Ker(N^T) is span(B): a path
// along increasing coordinates inside each support, with parameter
// b_j / b_i, and a zero-parameter loop on every uncovered coordinate.
ArcParamDigraph netmatrix_from_nnd(const NNDBasis& basis);

// NND basis of Ker(N^T) for a digraph whose non-loop arcs form a forest.
// Throws PreconditionError if a cycle passes through a non-loop arc.
NNDBasis kernel_nnd_basis(const ArcParamDigraph& d);

// NND basis of Ker(N^T) for an arbitrary digraph, computed per component by
// propagating multiplicative potentials along a spanning tree. A component
// contributes a vector exactly when every arc of it is consistent with the
// propagated potentials; otherwise the kernel vanishes there.
NNDBasis potential_kernel_basis(const ArcParamDigraph& d);

}  // namespace dlat
