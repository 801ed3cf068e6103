#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "dlat/graph.hpp"
#include "dlat/rational.hpp"

namespace dlat {

enum class CycleClass { lossy, gainy, breakeven };

const char* to_string(CycleClass c);

// Multiplier of a cyclically oriented cycle compared with 1. A zero-parameter
// loop traversed backward counts as gainy (its multiplier is unbounded).
// Throws PreconditionError if `cycle` is not closed or repeats an arc.
CycleClass classify_cycle(const ArcParamDigraph& d, const Walk& cycle);

// The flow supported on `w` with value f0 on the first arc that satisfies
// conservation at every interior vertex of the walk. Loops are only accepted
// as single-step walks.
RatVector inner_flow(const ArcParamDigraph& d, const Walk& w, const Rat& f0);

inline constexpr std::size_t kDefaultCycleCap = 10'000;
inline constexpr std::size_t kDefaultOracleArcCap = 14;

// Simple cycles of the underlying multigraph, one orientation each: loops
// forward, other cycles starting at their lowest vertex with the lower of the
// two arcs at that vertex first. Throws CapacityError past `cap` cycles.
std::vector<Walk> enumerate_cycles(const ArcParamDigraph& d, std::size_t cap = kDefaultCycleCap);

enum class SupportKind { breakeven_cycle, bicycle };

// A breakeven cycle, or a bicycle made of a gainy cycle, a lossy cycle and a
// connector walk leading from the lossy to the gainy cycle (empty when the
// cycles meet).
struct CombSupport {
  SupportKind kind = SupportKind::breakeven_cycle;
  Walk cycle;  // the breakeven cycle, or the gainy cycle of a bicycle
  Walk connector;
  Walk lossy;
  SignedArcSet signs;
  RatVector flow;
};

// Breakeven cycles and bicycles, one per signed support, oriented so that the
// lowest arc is forward and sorted by signed support.
std::vector<CombSupport> enumerate_comb_support(const ArcParamDigraph& d, std::size_t cap = kDefaultCycleCap);

// The flow with the sign pattern of `h`, scaled so that its first nonzero
// entry is +1 or -1 (that is, +1 for canonically oriented supports). Throws
// NotACircuit if `h` is not a breakeven cycle or bicycle of `d`.
RatVector flow_of_support(const ArcParamDigraph& d, const CombSupport& h);

// <x, f(H)>.
Rat bicircular_balance(const CombSupport& h, const RatVector& x);

// Prescribed balances keyed by canonical signed support; missing keys are 0.
using DeltaSpec = std::map<SignedArcSet, Rat>;

// x <= c and every bicircular balance matches `delta`.
bool is_generalized_delta_bond(const ArcParamDigraph& d, const RatVector& c, const DeltaSpec& delta,
                               const RatVector& x);

// Some x with the prescribed balances, or nullopt if the balances contradict
// each other.
std::optional<RatVector> delta_spec_witness(const ArcParamDigraph& d, const DeltaSpec& delta);

// Signed supports of the support-minimal nonzero flows, found by testing arc
// subsets in order of increasing size. Throws CapacityError if the digraph has
// more than `cap` arcs.
std::vector<SignedArcSet> signed_circuit_oracle(const ArcParamDigraph& d, std::size_t cap = kDefaultOracleArcCap);

}  // namespace dlat
