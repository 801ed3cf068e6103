#pragma once

#include <compare>
#include <cstddef>
#include <vector>

#include "dlat/matrix.hpp"
#include "dlat/rational.hpp"

namespace dlat {

// Vertices are 1..n. Arc identity is the position in the arc list.
struct Arc {
  std::size_t tail = 0;
  std::size_t head = 0;
  Rat lambda = 1;

  bool is_loop() const noexcept { return tail == head; }
  friend bool operator==(const Arc&, const Arc&) = default;
};

// Directed multigraph with a nonnegative parameter per arc. Parallel arcs and
// loops are allowed; a zero parameter is only allowed on a loop.
class ArcParamDigraph {
 public:
  ArcParamDigraph() = default;
  // Throws PreconditionError on out-of-range endpoints, negative parameters
  // or a zero parameter on a non-loop arc.
  ArcParamDigraph(std::size_t vertex_count, std::vector<Arc> arcs);

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t arc_count() const noexcept { return arcs_.size(); }
  const Arc& arc(std::size_t index) const { return arcs_.at(index); }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }

  friend bool operator==(const ArcParamDigraph&, const ArcParamDigraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Arc> arcs_;
};

// Assignment arc index -> {+1, -1, 0}. Ordered by support (as a sorted index
// list), then lexicographically by sign vector.
class SignedArcSet {
 public:
  SignedArcSet() = default;
  explicit SignedArcSet(std::size_t arc_count);
  explicit SignedArcSet(std::vector<int> signs);

  static SignedArcSet of(const RatVector& x);

  std::size_t size() const noexcept { return signs_.size(); }
  int operator[](std::size_t arc) const { return signs_.at(arc); }
  void set(std::size_t arc, int sign);
  const std::vector<int>& signs() const noexcept { return signs_; }

  std::vector<std::size_t> support() const;
  bool empty() const;
  SignedArcSet negated() const;
  // Orientation with the lowest-index arc of the support positive.
  SignedArcSet canonical() const;

  friend bool operator==(const SignedArcSet&, const SignedArcSet&) = default;
  friend std::strong_ordering operator<=>(const SignedArcSet& a, const SignedArcSet& b);

 private:
  std::vector<int> signs_;
};

struct WalkStep {
  std::size_t arc = 0;
  int dir = 1;  // +1 traverses tail -> head, -1 traverses head -> tail

  friend bool operator==(const WalkStep&, const WalkStep&) = default;
};

// A sequence of arcs where each step ends where the next one starts.
struct Walk {
  std::vector<WalkStep> steps;

  bool empty() const noexcept { return steps.empty(); }
  std::size_t size() const noexcept { return steps.size(); }
  friend bool operator==(const Walk&, const Walk&) = default;
};

std::size_t step_source(const ArcParamDigraph& d, const WalkStep& step);
std::size_t step_target(const ArcParamDigraph& d, const WalkStep& step);

// Throws PreconditionError unless `w` is a nonempty walk of `d`.
void check_walk(const ArcParamDigraph& d, const Walk& w);
std::size_t walk_start(const ArcParamDigraph& d, const Walk& w);
std::size_t walk_end(const ArcParamDigraph& d, const Walk& w);
bool is_closed(const ArcParamDigraph& d, const Walk& w);
// Vertex sequence v0, v1, ..., vk+1 visited by the walk.
std::vector<std::size_t> walk_vertices(const ArcParamDigraph& d, const Walk& w);
Walk reversed(const Walk& w);
// Closed walk rotated so that it starts at `vertex`; throws if not visited.
Walk rotated_to(const ArcParamDigraph& d, const Walk& cycle, std::size_t vertex);
// Throws PreconditionError if an arc occurs twice.
SignedArcSet signed_support(const ArcParamDigraph& d, const Walk& w);

// Column for arc a = (i, j) is e_j - lambda_a e_i.
RatMatrix network_matrix(const ArcParamDigraph& d);

// Product of lambda_a^{S_a}. Throws DomainError when a zero parameter would
// be inverted. A loop counts as a length-one cycle with multiplier lambda_a.
Rat multiplier(const ArcParamDigraph& d, const SignedArcSet& s);

// Inflow minus lambda-weighted outflow at vertex v.
Rat excess(const ArcParamDigraph& d, const RatVector& f, std::size_t v);

// Connected components of the underlying undirected graph; label per vertex
// (index 0 unused), labels numbered from 0 in order of lowest vertex.
std::vector<std::size_t> component_labels(const ArcParamDigraph& d);
std::size_t component_count(const ArcParamDigraph& d);

// Breadth-first spanning forest rooted at the lowest vertex of each
// component; arcs are scanned in index order. Returns arc indices.
std::vector<std::size_t> bfs_spanning_tree(const ArcParamDigraph& d);

// Cycle closed by non-tree arc `arc`, oriented so that `arc` is forward:
// the arc itself followed by the tree path back to its tail.
Walk fundamental_cycle(const ArcParamDigraph& d, const std::vector<std::size_t>& tree,
                       std::size_t arc);

}  // namespace dlat
