#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "dlat/graph.hpp"
#include "dlat/matrix.hpp"
#include "dlat/rational.hpp"

namespace dlat {

// {p : p_j - lambda_a p_i <= c_a for every arc a = (i, j)}, with equality on
// the arcs flagged in `eq`. Always closed under componentwise max and min.
struct DPolyhedron {
  ArcParamDigraph graph;
  RatVector c;
  std::vector<bool> eq;

  DPolyhedron() = default;
  // Throws PreconditionError on length mismatches. An empty `eq` means no
  // equality rows.
  DPolyhedron(ArcParamDigraph g, RatVector capacities, std::vector<bool> equalities = {});

  std::size_t dimension() const noexcept { return graph.vertex_count(); }
};

enum class Relation { le, eq };

// Generic {p : A p (<= | =) b} row by row.
struct HPolyhedron {
  RatMatrix a;
  RatVector b;
  std::vector<Relation> rel;

  HPolyhedron() = default;
  HPolyhedron(RatMatrix matrix, RatVector rhs, std::vector<Relation> relations = {});
};

bool member(const DPolyhedron& p, const RatVector& point);
bool member(const HPolyhedron& h, const RatVector& point);

// Componentwise max / min of two members. Throws PreconditionError if an
// input is not a member; the result is asserted to be a member.
RatVector join(const DPolyhedron& p, const RatVector& x, const RatVector& y);
RatVector meet(const DPolyhedron& p, const RatVector& x, const RatVector& y);

// Same point set, inequalities only. An equality arc (i, j) with lambda != 0
// becomes itself plus the reversed arc with parameter 1/lambda and capacity
// -c/lambda; an equality loop with lambda = 0 becomes itself plus a loop with
// parameter 2 and capacity -c.
DPolyhedron rewrite_equalities(const DPolyhedron& p);

HPolyhedron to_hpolyhedron(const DPolyhedron& p);

// Network form of `h` if every row, scaled by a positive rational, reads
// e_j - lambda e_i with lambda >= 0. Zero rows that always hold are dropped;
// zero rows that never hold are kept as a parameter-one loop at vertex 1 so
// the result stays empty. Absence is not evidence of non-distributivity.
std::optional<DPolyhedron> recognize_network_form(const HPolyhedron& h);

struct Refuted {
  RatVector x;
  RatVector y;
  bool max_fails = true;  // otherwise min(x, y) is the point outside
};
struct NoRefutation {
  std::size_t members_sampled = 0;
};
using SampleResult = std::variant<Refuted, NoRefutation>;

// Sound refuter. Each trial draws a random box [-R, R]^n, picks tight rows in
// random order until the system determines a point, and keeps the point if it
// lies in the box and in `h`. Pairs of sampled vertices and their midpoints
// are then tested for closure under max and min.
SampleResult sample_distributivity(const HPolyhedron& h, std::size_t trials, std::uint64_t seed);

}  // namespace dlat
