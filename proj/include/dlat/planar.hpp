#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dlat/bonds.hpp"
#include "dlat/graph.hpp"
#include "dlat/matrix.hpp"
#include "dlat/rational.hpp"

namespace dlat {

struct BreakevenCheck {
  bool breakeven = false;
  // Vertex multipliers (index 0 unused), 1 at the root of every component:
  // a forward tree arc multiplies by lambda.
  RatVector mu;
  // A fundamental cycle whose multiplier is not 1, when not breakeven.
  std::optional<Walk> witness;
};

// Every cycle has multiplier 1. Linear in the size of the digraph.
BreakevenCheck is_breakeven(const ArcParamDigraph& d);

// Sphere embedding given by its clockwise facial walks. Every arc occurs once
// forward and once backward over all faces.
struct PlanarEmbedding {
  ArcParamDigraph base;
  std::vector<Walk> faces;
};

// Throws EmbeddingError unless the base is connected and loopless, the faces
// are closed walks using every arc once in each direction, no arc borders a
// single face (bridge), and n - m + faces = 2.
void validate(const PlanarEmbedding& e);

// One vertex per face (face i is vertex i + 1); arc a runs from the face
// where it is traversed backward to the face where it is traversed forward.
// Parameters are left at 1.
ArcParamDigraph dual_digraph(const PlanarEmbedding& e);

struct DualResult {
  ArcParamDigraph dual;  // with the dual parameters
  RatVector sigma;       // positive arc scaling
  RatMatrix m;           // facial flows, one row per face, first nonzero entry +-1
};

// Throws PreconditionError (with the violating cycle) if the base is not
// breakeven and EmbeddingError on invalid embeddings.
DualResult dualize_flow_space(const PlanarEmbedding& e);

// x = S(sigma) f and back. Throw PreconditionError when the input is not a
// flow of the base or a bond of the dual.
RatVector flow_to_bond(const PlanarEmbedding& e, const DualResult& r, const RatVector& f);
RatVector bond_to_flow(const DualResult& r, const RatVector& x);

// Flows f <= c of a planar breakeven digraph, ordered through the dual bonds.
class PlanarFlowLattice {
 public:
  PlanarFlowLattice(PlanarEmbedding e, RatVector c);

  const DualResult& dual() const noexcept { return dual_; }
  bool is_feasible(const RatVector& f) const;
  RatVector join(const RatVector& f, const RatVector& g) const;
  RatVector meet(const RatVector& f, const RatVector& g) const;

 private:
  PlanarEmbedding embedding_;
  RatVector c_;
  DualResult dual_;
  ReducedSystem reduced_;
};

RatVector flow_join(const PlanarEmbedding& e, const RatVector& c, const RatVector& f, const RatVector& g);
RatVector flow_meet(const PlanarEmbedding& e, const RatVector& c, const RatVector& f, const RatVector& g);

// lambda_a = mu_j / mu_i for a = (i, j); `mu` is indexed from 0 for vertex 1.
ArcParamDigraph breakeven_parameterization(const ArcParamDigraph& skeleton, const RatVector& mu);

}  // namespace dlat
