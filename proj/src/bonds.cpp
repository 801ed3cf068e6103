#include "dlat/bonds.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>

#include "dlat/errors.hpp"
#include "dlat/linalg.hpp"

namespace dlat {

BondSystem::BondSystem(ArcParamDigraph g, RatVector upper_caps, std::optional<RatVector> lower_caps)
    : graph(std::move(g)), upper(std::move(upper_caps)), lower(std::move(lower_caps)) {
  if (upper.size() != graph.arc_count()) throw PreconditionError("upper capacities need one entry per arc");
  if (lower) {
    if (lower->size() != graph.arc_count()) throw PreconditionError("lower capacities need one entry per arc");
    if (!dominated_by(*lower, upper)) throw PreconditionError("lower capacity exceeds upper capacity");
  }
}

DPolyhedron potential_polyhedron(const BondSystem& s) {
  std::vector<Arc> arcs = s.graph.arcs();
  RatVector c = s.upper;
  if (s.lower) {
    for (std::size_t a = 0; a < s.graph.arc_count(); ++a) {
      const Arc& arc = s.graph.arc(a);
      const Rat& low = (*s.lower)[a];
      if (sgn(arc.lambda) == 0) {
        arcs.push_back({arc.tail, arc.tail, Rat(2)});
        c.push_back(-low);
      } else {
        const Rat inv = 1 / arc.lambda;
        arcs.push_back({arc.head, arc.tail, inv});
        c.push_back(-inv * low);
      }
    }
  }
  return DPolyhedron(ArcParamDigraph(s.graph.vertex_count(), std::move(arcs)), std::move(c));
}

RatVector bond_of_potential(const ArcParamDigraph& d, const RatVector& p) {
  if (p.size() != d.vertex_count()) throw std::invalid_argument("potential has wrong length");
  RatVector x(d.arc_count());
  for (std::size_t a = 0; a < d.arc_count(); ++a) {
    const Arc& arc = d.arc(a);
    x[a] = p[arc.head - 1] - arc.lambda * p[arc.tail - 1];
  }
  return x;
}

bool in_bond_space(const ArcParamDigraph& d, const RatVector& x) {
  return solve(network_matrix(d).transposed(), x).has_value();
}

bool is_feasible_bond(const BondSystem& s, const RatVector& x) {
  if (x.size() != s.graph.arc_count()) return false;
  if (!dominated_by(x, s.upper)) return false;
  if (s.lower && !dominated_by(*s.lower, x)) return false;
  return in_bond_space(s.graph, x);
}

ReducedSystem reduce(const BondSystem& s, const std::optional<std::vector<std::size_t>>& pins) {
  ReducedSystem r;
  r.original = s;
  r.kernel = potential_kernel_basis(s.graph);
  if (pins) {
    if (pins->size() != r.kernel.vectors.size()) {
      throw PreconditionError("need exactly one pin per kernel basis vector (" +
                              std::to_string(r.kernel.vectors.size()) + ")");
    }
    for (const RatVector& b : r.kernel.vectors) {
      const auto hits = std::count_if(pins->begin(), pins->end(), [&](std::size_t v) {
        return v >= 1 && v <= b.size() && sgn(b[v - 1]) != 0;
      });
      if (hits != 1) throw PreconditionError("every kernel support must contain exactly one pin");
    }
    r.pins = *pins;
  } else {
    for (const RatVector& b : r.kernel.vectors) {
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (sgn(b[i]) != 0) {
          r.pins.push_back(i + 1);
          break;
        }
      }
    }
  }
  const DPolyhedron base = potential_polyhedron(s);
  std::vector<Arc> arcs = base.graph.arcs();
  RatVector c = base.c;
  std::vector<bool> eq = base.eq;
  for (std::size_t v : r.pins) {
    arcs.push_back({v, v, Rat(0)});
    c.push_back(0);
    eq.push_back(true);
  }
  r.augmented = DPolyhedron(ArcParamDigraph(s.graph.vertex_count(), std::move(arcs)), std::move(c), std::move(eq));
  return r;
}

RatVector potential_of_bond(const ReducedSystem& r, const RatVector& x) {
  const ArcParamDigraph& d = r.original.graph;
  if (x.size() != d.arc_count()) throw std::invalid_argument("bond has wrong length");
  RatMatrix pin_rows(r.pins.size(), d.vertex_count());
  for (std::size_t k = 0; k < r.pins.size(); ++k) pin_rows(k, r.pins[k] - 1) = 1;
  RatVector rhs = x;
  rhs.resize(x.size() + r.pins.size(), Rat(0));
  auto p = solve(network_matrix(d).transposed().stacked(pin_rows), rhs);
  if (!p) throw NotABond(to_string(x) + " is not in the image of the transposed network matrix");
  return *p;
}

namespace {

RatVector bond_lattice_op(const ReducedSystem& r, const RatVector& x, const RatVector& y, bool take_max) {
  if (!is_feasible_bond(r.original, x)) throw PreconditionError(to_string(x) + " is not a feasible bond");
  if (!is_feasible_bond(r.original, y)) throw PreconditionError(to_string(y) + " is not a feasible bond");
  const RatVector p = potential_of_bond(r, x);
  const RatVector q = potential_of_bond(r, y);
  const RatVector combined = take_max ? componentwise_max(p, q) : componentwise_min(p, q);
  RatVector out = bond_of_potential(r.original.graph, combined);
  if (!is_feasible_bond(r.original, out)) {
    throw std::logic_error("bond lattice operation produced an infeasible bond " + to_string(out));
  }
  return out;
}

}  // namespace

RatVector bond_join(const ReducedSystem& r, const RatVector& x, const RatVector& y) {
  return bond_lattice_op(r, x, y, true);
}

RatVector bond_meet(const ReducedSystem& r, const RatVector& x, const RatVector& y) {
  return bond_lattice_op(r, x, y, false);
}

RatVector bond_join(const BondSystem& s, const RatVector& x, const RatVector& y) {
  return bond_join(reduce(s), x, y);
}

RatVector bond_meet(const BondSystem& s, const RatVector& x, const RatVector& y) {
  return bond_meet(reduce(s), x, y);
}

Rat circular_balance(const ArcParamDigraph& d, const Walk& cycle, const RatVector& x) {
  if (!is_closed(d, cycle)) throw PreconditionError("circular balance needs a closed walk");
  if (x.size() != d.arc_count()) throw std::invalid_argument("arc vector has wrong length");
  Rat total = 0;
  for (const WalkStep& s : cycle.steps) total += s.dir > 0 ? x[s.arc] : Rat(-x[s.arc]);
  return total;
}

DeltaTranslation delta_translate(const ArcParamDigraph& d, const RatVector& lower, const RatVector& upper,
                                 const RatVector& delta, const std::optional<std::vector<std::size_t>>& tree) {
  const std::size_t m = d.arc_count();
  if (lower.size() != m || upper.size() != m) throw PreconditionError("capacities need one entry per arc");
  if (!delta.empty() && delta.size() != m) throw PreconditionError("balances need one entry per arc");
  for (const Arc& a : d.arcs()) {
    if (a.lambda != 1) throw PreconditionError("Delta-bonds need all arc parameters equal to one");
  }
  if (d.vertex_count() == 0 || component_count(d) != 1) {
    throw PreconditionError("digraph must be connected; translate each component separately");
  }

  DeltaTranslation t;
  t.tree = tree ? *tree : bfs_spanning_tree(d);
  std::sort(t.tree.begin(), t.tree.end());
  {
    std::vector<Arc> tree_arcs;
    for (std::size_t a : t.tree) {
      if (a >= m || d.arc(a).is_loop()) throw PreconditionError("tree contains an invalid arc");
      tree_arcs.push_back(d.arc(a));
    }
    const ArcParamDigraph forest(d.vertex_count(), std::move(tree_arcs));
    if (t.tree.size() + 1 != d.vertex_count() || component_count(forest) != 1) {
      throw PreconditionError("given arcs do not form a spanning tree");
    }
  }

  t.shift = zeros(m);
  for (std::size_t a = 0; a < m; ++a) {
    const bool in_tree = std::binary_search(t.tree.begin(), t.tree.end(), a);
    const Rat value = delta.empty() ? Rat(0) : delta[a];
    if (in_tree) {
      if (sgn(value) != 0) throw PreconditionError("balance given for tree arc " + std::to_string(a));
    } else {
      t.shift[a] = value;
    }
  }
  t.lower = lower - t.shift;
  t.upper = upper - t.shift;
  return t;
}

namespace {

using Int = std::int64_t;
constexpr Int kIntBound = Int{1} << 40;

Int to_int(const Rat& r, const char* what) {
  if (!is_integer(r)) throw PreconditionError(std::string(what) + " must be integral, got " + to_string(r));
  if (abs(r) > Rat(kIntBound)) throw CapacityError(std::string(what) + " too large for integral enumeration");
  return r.get_num().get_si();
}

// d[to] <= d[from] + weight
struct DiffEdge {
  std::size_t from;
  std::size_t to;
  Int weight;
};

// Bellman-Ford on vertices 0..n where 0 anchors fixed values. Returns false
// on a negative cycle.
bool difference_feasible(std::size_t n, const std::vector<DiffEdge>& edges,
                         const std::vector<std::optional<Int>>& fixed) {
  std::vector<DiffEdge> all = edges;
  for (std::size_t v = 1; v <= n; ++v) {
    if (fixed[v]) {
      all.push_back({0, v, *fixed[v]});
      all.push_back({v, 0, -*fixed[v]});
    }
  }
  std::vector<Int> dist(n + 1, 0);
  for (std::size_t iter = 0; iter <= n + 1; ++iter) {
    bool changed = false;
    for (const DiffEdge& e : all) {
      if (dist[e.from] + e.weight < dist[e.to]) {
        dist[e.to] = dist[e.from] + e.weight;
        changed = true;
      }
    }
    if (!changed) return true;
  }
  return false;
}

std::vector<Int> shortest_from(std::size_t n, const std::vector<DiffEdge>& edges, std::size_t source) {
  constexpr Int inf = Int{1} << 60;
  std::vector<Int> dist(n + 1, inf);
  dist[source] = 0;
  for (std::size_t iter = 0; iter < n; ++iter) {
    for (const DiffEdge& e : edges) {
      if (dist[e.from] != inf && dist[e.from] + e.weight < dist[e.to]) dist[e.to] = dist[e.from] + e.weight;
    }
  }
  return dist;
}

}  // namespace

IntegralBondLattice enumerate_integral_bonds(const ArcParamDigraph& d, const RatVector& lower,
                                             const RatVector& upper, const RatVector& delta,
                                             const IntegralBondOptions& options) {
  for (const Rat& v : delta) to_int(v, "balance");
  const DeltaTranslation t = delta_translate(d, lower, upper, delta, options.tree);
  const std::size_t n = d.vertex_count();
  if (options.pin < 1 || options.pin > n) throw PreconditionError("pin vertex out of range");

  IntegralBondLattice out;
  std::vector<DiffEdge> edges;
  for (std::size_t a = 0; a < d.arc_count(); ++a) {
    const Arc& arc = d.arc(a);
    const Int lo = to_int(t.lower[a], "lower capacity");
    const Int hi = to_int(t.upper[a], "upper capacity");
    if (lo > hi) return out;
    if (arc.is_loop()) {
      if (lo > 0 || hi < 0) return out;
      continue;
    }
    edges.push_back({arc.tail, arc.head, hi});
    edges.push_back({arc.head, arc.tail, -lo});
  }

  std::vector<std::optional<Int>> fixed(n + 1);
  fixed[options.pin] = 0;
  if (!difference_feasible(n, edges, fixed)) return out;

  std::vector<DiffEdge> reversed_edges;
  for (const DiffEdge& e : edges) reversed_edges.push_back({e.to, e.from, e.weight});
  const std::vector<Int> upper_bound = shortest_from(n, edges, options.pin);
  const std::vector<Int> to_pin = shortest_from(n, reversed_edges, options.pin);

  std::vector<std::vector<Int>> potentials;
  std::vector<Int> current(n + 1, 0);
  std::function<void(std::size_t)> assign = [&](std::size_t v) {
    if (v > n) {
      if (potentials.size() >= options.cap) {
        throw CapacityError("more than " + std::to_string(options.cap) + " lattice elements");
      }
      potentials.emplace_back(current.begin() + 1, current.end());
      return;
    }
    if (v == options.pin) {
      current[v] = 0;
      assign(v + 1);
      return;
    }
    for (Int value = -to_pin[v]; value <= upper_bound[v]; ++value) {
      fixed[v] = value;
      if (difference_feasible(n, edges, fixed)) {
        current[v] = value;
        assign(v + 1);
      }
    }
    fixed[v].reset();
  };
  assign(1);

  std::map<std::vector<Int>, std::size_t> index;
  for (std::size_t i = 0; i < potentials.size(); ++i) index.emplace(potentials[i], i);

  std::vector<std::size_t> free_vertices;
  for (std::size_t v = 1; v <= n; ++v) {
    if (v != options.pin) free_vertices.push_back(v);
  }
  if (free_vertices.size() > 20) throw CapacityError("cover computation limited to 21 vertices");
  const std::uint32_t subsets = std::uint32_t{1} << free_vertices.size();
  std::vector<std::uint32_t> by_size;
  for (std::uint32_t s = 1; s < subsets; ++s) by_size.push_back(s);
  std::stable_sort(by_size.begin(), by_size.end(),
                   [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });

  // A cover of p is p + 1_S for an inclusion-minimal feasible S.
  for (std::size_t i = 0; i < potentials.size(); ++i) {
    std::vector<std::uint32_t> found;
    std::vector<std::pair<std::size_t, std::size_t>> local;
    for (std::uint32_t s : by_size) {
      if (std::any_of(found.begin(), found.end(), [s](std::uint32_t f) { return (s & f) == f; })) continue;
      std::vector<Int> q = potentials[i];
      for (std::size_t k = 0; k < free_vertices.size(); ++k) {
        if (s >> k & 1) q[free_vertices[k] - 1] += 1;
      }
      if (auto it = index.find(q); it != index.end()) {
        found.push_back(s);
        local.emplace_back(i, it->second);
      }
    }
    std::sort(local.begin(), local.end());
    out.covers.insert(out.covers.end(), local.begin(), local.end());
  }

  for (const auto& p : potentials) {
    RatVector pot(n);
    for (std::size_t v = 0; v < n; ++v) pot[v] = Rat(static_cast<long>(p[v]));
    RatVector x(d.arc_count());
    for (std::size_t a = 0; a < d.arc_count(); ++a) x[a] = pot[d.arc(a).head - 1] - pot[d.arc(a).tail - 1];
    out.bonds.push_back(t.undo(x));
    out.potentials.push_back(std::move(pot));
  }
  return out;
}

}  // namespace dlat
