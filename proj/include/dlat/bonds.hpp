#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "dlat/dpoly.hpp"
#include "dlat/dspace.hpp"
#include "dlat/graph.hpp"
#include "dlat/rational.hpp"

namespace dlat {

// Upper capacities, and optionally lower capacities for the two-sided case.
struct BondSystem {
  ArcParamDigraph graph;
  RatVector upper;
  std::optional<RatVector> lower;

  BondSystem() = default;
  BondSystem(ArcParamDigraph g, RatVector upper_caps, std::optional<RatVector> lower_caps = std::nullopt);
};

// Potentials of the system: one row per upper capacity and, for every lower
// capacity, the reversed twin row (parameter 1/lambda, or a parameter-two
// loop for zero-parameter loops).
DPolyhedron potential_polyhedron(const BondSystem& s);

// The system with one pinned vertex per NND-basis vector of Ker(N^T); on
// {p : p_pin = 0} the map p -> N^T p is a bijection onto the bonds.
struct ReducedSystem {
  BondSystem original;
  NNDBasis kernel;
  std::vector<std::size_t> pins;  // 1-based vertices
  DPolyhedron augmented;          // potential polyhedron + equality loop (lambda 0, c 0) per pin
};

// x_a = p_j - lambda_a p_i.
RatVector bond_of_potential(const ArcParamDigraph& d, const RatVector& p);

// x in Im(N^T).
bool in_bond_space(const ArcParamDigraph& d, const RatVector& x);
bool is_feasible_bond(const BondSystem& s, const RatVector& x);

// Pins the least support index of every kernel basis vector unless `pins`
// is given; explicit pins must hit each support exactly once.
ReducedSystem reduce(const BondSystem& s, const std::optional<std::vector<std::size_t>>& pins = std::nullopt);

// The unique pinned potential with N^T p = x. Throws NotABond if x is not in
// the image.
RatVector potential_of_bond(const ReducedSystem& r, const RatVector& x);

// Lattice operations induced from the pinned potentials. Throw
// PreconditionError on infeasible inputs.
RatVector bond_join(const ReducedSystem& r, const RatVector& x, const RatVector& y);
RatVector bond_meet(const ReducedSystem& r, const RatVector& x, const RatVector& y);
RatVector bond_join(const BondSystem& s, const RatVector& x, const RatVector& y);
RatVector bond_meet(const BondSystem& s, const RatVector& x, const RatVector& y);

// Sum over forward arcs minus sum over backward arcs of a closed walk.
Rat circular_balance(const ArcParamDigraph& d, const Walk& cycle, const RatVector& x);

// Removes prescribed circular balances. `delta[a]` is the balance of the
// fundamental cycle closed by non-tree arc a (zero on tree arcs). Bonds with
// balances delta map to 0-bonds via x -> x - shift.
struct DeltaTranslation {
  std::vector<std::size_t> tree;
  RatVector shift;
  RatVector lower;
  RatVector upper;

  RatVector apply(const RatVector& x) const { return x - shift; }
  RatVector undo(const RatVector& x) const { return x + shift; }
};

// `d` must be connected with all parameters equal to one. An empty `delta`
// means zero balances; an absent tree means bfs_spanning_tree(d).
DeltaTranslation delta_translate(const ArcParamDigraph& d, const RatVector& lower, const RatVector& upper,
                                 const RatVector& delta,
                                 const std::optional<std::vector<std::size_t>>& tree = std::nullopt);

inline constexpr std::size_t kDefaultLatticeCap = 1'000'000;

struct IntegralBondOptions {
  std::size_t cap = kDefaultLatticeCap;
  std::optional<std::vector<std::size_t>> tree;
  std::size_t pin = 1;
};

// Elements sorted lexicographically by pinned potential; covers are
// (lower, upper) index pairs of the dominance order on potentials.
struct IntegralBondLattice {
  std::vector<RatVector> bonds;
  std::vector<RatVector> potentials;
  std::vector<std::pair<std::size_t, std::size_t>> covers;
};

// Integral Delta-bonds of a connected digraph with unit parameters. Capacities
// and balances must be integers. Throws CapacityError past `options.cap`
// elements.
IntegralBondLattice enumerate_integral_bonds(const ArcParamDigraph& d, const RatVector& lower,
                                             const RatVector& upper, const RatVector& delta,
                                             const IntegralBondOptions& options = {});

}  // namespace dlat
