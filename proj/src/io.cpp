#include "dlat/io.hpp"

#include <fstream>
#include <sstream>

#include "dlat/errors.hpp"

namespace dlat::io {

namespace {

// Converts nlohmann type errors into our ParseError.
template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

const json& require(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string(what) + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

std::size_t to_size(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw ParseError(std::string(what) + ": expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

}  // namespace

json parse_json(std::string_view text, std::string_view source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string message = e.what();
    if (const auto pos = message.find("syntax error"); pos != std::string::npos) message = message.substr(pos);
    throw ParseError(std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                     message);
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str(), path);
}

Rat rat_from_json(const json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return parse_rat(j.dump());
  throw ParseError("expected a rational string \"p/q\" or an integer, got " + j.dump());
}

json to_json(const Rat& r) { return to_string(r); }

RatVector vector_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rationals");
  RatVector v;
  v.reserve(j.size());
  for (const json& e : j) v.push_back(rat_from_json(e));
  return v;
}

json to_json(const RatVector& v) {
  json out = json::array();
  for (const Rat& r : v) out.push_back(to_string(r));
  return out;
}

RatMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rows");
  std::vector<RatVector> rows;
  for (const json& r : j) rows.push_back(vector_from_json(r));
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (const RatVector& r : rows) {
    if (r.size() != cols) throw ParseError("matrix rows differ in length");
  }
  return RatMatrix::from_rows(rows, cols);
}

json to_json(const RatMatrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
  return out;
}

ArcParamDigraph graph_from_json(const json& j) {
  const std::size_t n = to_size(require(j, "n", "graph"), "graph.n");
  const json& arcs = require(j, "arcs", "graph");
  if (!arcs.is_array()) throw ParseError("graph.arcs must be an array");
  std::vector<Arc> out;
  for (const json& a : arcs) {
    Arc arc;
    arc.tail = to_size(require(a, "tail", "arc"), "arc.tail");
    arc.head = to_size(require(a, "head", "arc"), "arc.head");
    arc.lambda = a.contains("lambda") ? rat_from_json(a.at("lambda")) : Rat(1);
    out.push_back(arc);
  }
  try {
    return ArcParamDigraph(n, std::move(out));
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("graph: ") + e.what());
  }
}

json to_json(const ArcParamDigraph& d) {
  json arcs = json::array();
  for (const Arc& a : d.arcs()) {
    arcs.push_back({{"tail", a.tail}, {"head", a.head}, {"lambda", to_string(a.lambda)}});
  }
  return {{"n", d.vertex_count()}, {"arcs", arcs}};
}

DPolyhedron dpoly_from_json(const json& j) {
  ArcParamDigraph g = graph_from_json(j);
  RatVector c = vector_from_json(require(j, "c", "D-polyhedron"));
  std::vector<bool> eq;
  if (j.contains("eq")) {
    eq = guarded("D-polyhedron.eq", [&] { return j.at("eq").get<std::vector<bool>>(); });
  }
  try {
    return DPolyhedron(std::move(g), std::move(c), std::move(eq));
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("D-polyhedron: ") + e.what());
  }
}

json to_json(const DPolyhedron& p) {
  json out = to_json(p.graph);
  out["c"] = to_json(p.c);
  out["eq"] = p.eq;
  return out;
}

HPolyhedron hpoly_from_json(const json& j) {
  RatMatrix a = matrix_from_json(require(j, "A", "H-polyhedron"));
  RatVector b = vector_from_json(require(j, "b", "H-polyhedron"));
  std::vector<Relation> rel;
  if (j.contains("rel")) {
    for (const json& r : j.at("rel")) {
      const std::string s = guarded("H-polyhedron.rel", [&] { return r.get<std::string>(); });
      if (s == "le") {
        rel.push_back(Relation::le);
      } else if (s == "eq") {
        rel.push_back(Relation::eq);
      } else {
        throw ParseError("H-polyhedron.rel entries must be \"le\" or \"eq\"");
      }
    }
  }
  try {
    return HPolyhedron(std::move(a), std::move(b), std::move(rel));
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("H-polyhedron: ") + e.what());
  }
}

json to_json(const HPolyhedron& h) {
  json rel = json::array();
  for (Relation r : h.rel) rel.push_back(r == Relation::eq ? "eq" : "le");
  return {{"A", to_json(h.a)}, {"b", to_json(h.b)}, {"rel", rel}};
}

AffineSubspace affine_from_json(const json& j) {
  AffineSubspace s;
  for (const json& d : require(j, "directions", "subspace")) s.directions.push_back(vector_from_json(d));
  std::size_t n = 0;
  if (j.contains("n")) {
    n = to_size(j.at("n"), "subspace.n");
  } else if (j.contains("offset")) {
    n = j.at("offset").size();
  } else if (!s.directions.empty()) {
    n = s.directions.front().size();
  }
  s.offset = j.contains("offset") ? vector_from_json(j.at("offset")) : zeros(n);
  if (s.offset.size() != n) throw ParseError("subspace offset has wrong length");
  for (const RatVector& d : s.directions) {
    if (d.size() != n) throw ParseError("subspace direction has wrong length");
  }
  return s;
}

json to_json(const NNDBasis& b) {
  json vectors = json::array();
  for (const RatVector& v : b.vectors) vectors.push_back(to_json(v));
  return {{"n", b.dimension}, {"basis", vectors}};
}

Walk walk_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("walk must be an array of steps");
  Walk w;
  for (const json& s : j) {
    WalkStep step;
    step.arc = to_size(require(s, "arc", "walk step"), "walk step arc");
    step.dir = guarded("walk step dir", [&] { return require(s, "dir", "walk step").get<int>(); });
    if (step.dir != 1 && step.dir != -1) throw ParseError("walk step dir must be 1 or -1");
    w.steps.push_back(step);
  }
  return w;
}

json to_json(const Walk& w) {
  json out = json::array();
  for (const WalkStep& s : w.steps) out.push_back({{"arc", s.arc}, {"dir", s.dir}});
  return out;
}

PlanarEmbedding embedding_from_json(const json& j) {
  PlanarEmbedding e;
  e.base = graph_from_json(j);
  for (const json& f : require(j, "faces", "embedding")) e.faces.push_back(walk_from_json(f));
  return e;
}

json to_json(const SignedArcSet& s) { return s.signs(); }

json to_json(const ArcParamDigraph& d, const CombSupport& h) {
  json out;
  if (h.kind == SupportKind::breakeven_cycle) {
    out["kind"] = "breakeven-cycle";
    out["cycle"] = to_json(h.cycle);
    out["class"] = "breakeven";
    out["multiplier"] = "1";
  } else {
    out["kind"] = "bicycle";
    out["gainy"] = to_json(h.cycle);
    out["connector"] = to_json(h.connector);
    out["lossy"] = to_json(h.lossy);
    const SignedArcSet lossy = signed_support(d, h.lossy);
    if (h.lossy.size() == 1 && sgn(d.arc(h.lossy.steps[0].arc).lambda) == 0) {
      out["lossy_multiplier"] = "0";
    } else {
      out["lossy_multiplier"] = to_string(multiplier(d, lossy));
    }
    const WalkStep& g0 = h.cycle.steps[0];
    if (h.cycle.size() == 1 && sgn(d.arc(g0.arc).lambda) == 0) {
      out["gainy_multiplier"] = "inf";
    } else {
      out["gainy_multiplier"] = to_string(multiplier(d, signed_support(d, h.cycle)));
    }
  }
  out["signs"] = to_json(h.signs);
  out["flow"] = to_json(h.flow);
  return out;
}

json to_json(const DualResult& r) {
  return {{"dual", to_json(r.dual)}, {"sigma", to_json(r.sigma)}, {"M", to_json(r.m)}};
}

std::string lattice_to_dot(const IntegralBondLattice& lattice) {
  std::ostringstream out;
  out << "digraph lattice {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < lattice.bonds.size(); ++i) {
    out << "  n" << i << " [label=\"" << to_string(lattice.bonds[i]) << "\"];\n";
  }
  for (const auto& [lo, hi] : lattice.covers) out << "  n" << lo << " -> n" << hi << ";\n";
  out << "}\n";
  return out.str();
}

std::string supports_to_dot(const ArcParamDigraph& d, const std::vector<CombSupport>& supports) {
  std::ostringstream out;
  out << "digraph supports {\n";
  for (std::size_t k = 0; k < supports.size(); ++k) {
    const CombSupport& h = supports[k];
    out << "  subgraph cluster_" << k << " {\n    label=\""
        << (h.kind == SupportKind::bicycle ? "bicycle " : "breakeven cycle ") << k << "\";\n";
    for (std::size_t v = 1; v <= d.vertex_count(); ++v) {
      out << "    s" << k << "_" << v << " [label=\"" << v << "\"];\n";
    }
    for (std::size_t a = 0; a < d.arc_count(); ++a) {
      const Arc& arc = d.arc(a);
      out << "    s" << k << "_" << arc.tail << " -> s" << k << "_" << arc.head << " [label=\"" << a << ": "
          << to_string(arc.lambda) << "\"";
      if (h.signs[a] != 0) out << ", color=" << (h.signs[a] > 0 ? "red" : "blue") << ", penwidth=2";
      out << "];\n";
    }
    out << "  }\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace dlat::io
