#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dlat/bonds.hpp"
#include "dlat/dpoly.hpp"
#include "dlat/dspace.hpp"
#include "dlat/gencycle.hpp"
#include "dlat/graph.hpp"
#include "dlat/planar.hpp"
#include "dlat/rational.hpp"

// JSON and DOT formats. Rationals are strings "p/q" (or "p"); plain JSON
// integers are accepted on input. Arc indices are 0-based, vertices 1-based.
namespace dlat::io {

using json = nlohmann::json;

// Throws ParseError with "<source>:<line>:<column>: ..." on malformed text.
json parse_json(std::string_view text, std::string_view source = "<input>");
json read_json_file(const std::string& path);

Rat rat_from_json(const json& j);
json to_json(const Rat& r);
RatVector vector_from_json(const json& j);
json to_json(const RatVector& v);
RatMatrix matrix_from_json(const json& j);
json to_json(const RatMatrix& m);

// {"n": int, "arcs": [{"tail", "head", "lambda"}]}; lambda defaults to "1".
ArcParamDigraph graph_from_json(const json& j);
json to_json(const ArcParamDigraph& d);

// Graph plus {"c": [...], "eq": [bool, ...]}; "eq" is optional.
DPolyhedron dpoly_from_json(const json& j);
json to_json(const DPolyhedron& p);

// {"A": [[...]], "b": [...], "rel": ["le" | "eq", ...]}; "rel" is optional.
HPolyhedron hpoly_from_json(const json& j);
json to_json(const HPolyhedron& h);

// {"n": dim (optional), "offset": [...] (optional), "directions": [[...]]}.
AffineSubspace affine_from_json(const json& j);
json to_json(const NNDBasis& b);

// [{"arc": idx, "dir": 1 | -1}, ...]
Walk walk_from_json(const json& j);
json to_json(const Walk& w);

// Graph plus {"faces": [walk, ...]}.
PlanarEmbedding embedding_from_json(const json& j);

json to_json(const SignedArcSet& s);
json to_json(const ArcParamDigraph& d, const CombSupport& h);
json to_json(const DualResult& r);

std::string lattice_to_dot(const IntegralBondLattice& lattice);
std::string supports_to_dot(const ArcParamDigraph& d, const std::vector<CombSupport>& supports);

}  // namespace dlat::io
