#include "dlat/dpoly.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

#include "dlat/errors.hpp"
#include "dlat/linalg.hpp"

namespace dlat {

DPolyhedron::DPolyhedron(ArcParamDigraph g, RatVector capacities, std::vector<bool> equalities)
    : graph(std::move(g)), c(std::move(capacities)), eq(std::move(equalities)) {
  if (eq.empty()) eq.assign(graph.arc_count(), false);
  if (c.size() != graph.arc_count() || eq.size() != graph.arc_count()) {
    throw PreconditionError("capacity / equality vectors must have one entry per arc");
  }
}

HPolyhedron::HPolyhedron(RatMatrix matrix, RatVector rhs, std::vector<Relation> relations)
    : a(std::move(matrix)), b(std::move(rhs)), rel(std::move(relations)) {
  if (rel.empty()) rel.assign(a.rows(), Relation::le);
  if (b.size() != a.rows() || rel.size() != a.rows()) {
    throw PreconditionError("row count of A, b and relations must agree");
  }
}

bool member(const DPolyhedron& p, const RatVector& point) {
  if (point.size() != p.dimension()) throw std::invalid_argument("point has wrong dimension");
  for (std::size_t a = 0; a < p.graph.arc_count(); ++a) {
    const Arc& arc = p.graph.arc(a);
    const Rat value = point[arc.head - 1] - arc.lambda * point[arc.tail - 1];
    if (p.eq[a] ? value != p.c[a] : value > p.c[a]) return false;
  }
  return true;
}

bool member(const HPolyhedron& h, const RatVector& point) {
  const RatVector lhs = h.a * point;
  for (std::size_t r = 0; r < lhs.size(); ++r) {
    if (h.rel[r] == Relation::eq ? lhs[r] != h.b[r] : lhs[r] > h.b[r]) return false;
  }
  return true;
}

namespace {

RatVector lattice_op(const DPolyhedron& p, const RatVector& x, const RatVector& y, bool take_max) {
  if (!member(p, x)) throw PreconditionError("first argument " + to_string(x) + " is not a member");
  if (!member(p, y)) throw PreconditionError("second argument " + to_string(y) + " is not a member");
  RatVector out = take_max ? componentwise_max(x, y) : componentwise_min(x, y);
  if (!member(p, out)) {
    throw std::logic_error("lattice operation left the polyhedron at " + to_string(out));
  }
  return out;
}

}  // namespace

RatVector join(const DPolyhedron& p, const RatVector& x, const RatVector& y) {
  return lattice_op(p, x, y, true);
}

RatVector meet(const DPolyhedron& p, const RatVector& x, const RatVector& y) {
  return lattice_op(p, x, y, false);
}

DPolyhedron rewrite_equalities(const DPolyhedron& p) {
  std::vector<Arc> arcs;
  RatVector c;
  for (std::size_t a = 0; a < p.graph.arc_count(); ++a) {
    const Arc& arc = p.graph.arc(a);
    arcs.push_back(arc);
    c.push_back(p.c[a]);
    if (!p.eq[a]) continue;
    if (sgn(arc.lambda) != 0) {
      const Rat inv = 1 / arc.lambda;
      arcs.push_back({arc.head, arc.tail, inv});
      c.push_back(-inv * p.c[a]);
    } else {
      arcs.push_back({arc.tail, arc.tail, Rat(2)});
      c.push_back(-p.c[a]);
    }
  }
  return DPolyhedron(ArcParamDigraph(p.graph.vertex_count(), std::move(arcs)), std::move(c));
}

HPolyhedron to_hpolyhedron(const DPolyhedron& p) {
  std::vector<Relation> rel;
  for (bool e : p.eq) rel.push_back(e ? Relation::eq : Relation::le);
  return HPolyhedron(network_matrix(p.graph).transposed(), p.c, std::move(rel));
}

std::optional<DPolyhedron> recognize_network_form(const HPolyhedron& h) {
  const std::size_t n = h.a.cols();
  std::vector<Arc> arcs;
  RatVector c;
  std::vector<bool> eq;
  for (std::size_t r = 0; r < h.a.rows(); ++r) {
    std::vector<std::size_t> nonzero;
    for (std::size_t k = 0; k < n; ++k) {
      if (sgn(h.a(r, k)) != 0) nonzero.push_back(k);
    }
    const bool is_eq = h.rel[r] == Relation::eq;
    const Rat& rhs = h.b[r];
    if (nonzero.empty()) {
      const bool holds = is_eq ? sgn(rhs) == 0 : sgn(rhs) >= 0;
      if (holds) continue;
      if (n == 0) return std::nullopt;
      arcs.push_back({1, 1, Rat(1)});
      c.push_back(rhs);
      eq.push_back(is_eq);
    } else if (nonzero.size() == 1) {
      const std::size_t i = nonzero[0];
      const Rat& coef = h.a(r, i);
      if (sgn(coef) > 0) {
        arcs.push_back({i + 1, i + 1, Rat(0)});
        c.push_back(rhs / coef);
      } else {
        arcs.push_back({i + 1, i + 1, Rat(2)});
        c.push_back(rhs / -coef);
      }
      eq.push_back(is_eq);
    } else if (nonzero.size() == 2) {
      const Rat& first = h.a(r, nonzero[0]);
      const Rat& second = h.a(r, nonzero[1]);
      if (sgn(first) == sgn(second)) return std::nullopt;
      const std::size_t head = sgn(first) > 0 ? nonzero[0] : nonzero[1];
      const std::size_t tail = sgn(first) > 0 ? nonzero[1] : nonzero[0];
      const Rat& pos = h.a(r, head);
      arcs.push_back({tail + 1, head + 1, Rat(-h.a(r, tail) / pos)});
      c.push_back(rhs / pos);
      eq.push_back(is_eq);
    } else {
      return std::nullopt;
    }
  }
  return DPolyhedron(ArcParamDigraph(n, std::move(arcs)), std::move(c), std::move(eq));
}

namespace {

struct Row {
  RatVector coeffs;
  Rat rhs;
};

// Uniform draw in [0, bound) that does not depend on the standard library's
// distribution implementations.
std::size_t draw(std::mt19937_64& rng, std::size_t bound) { return static_cast<std::size_t>(rng() % bound); }

}  // namespace

SampleResult sample_distributivity(const HPolyhedron& h, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw PreconditionError("trials must be at least 1");
  const std::size_t n = h.a.cols();
  if (n == 0) return NoRefutation{0};
  std::mt19937_64 rng(seed);
  constexpr std::size_t kMaxVertices = 16;

  std::vector<Row> equalities;
  std::vector<Row> inequalities;
  for (std::size_t r = 0; r < h.a.rows(); ++r) {
    Row row{h.a.row(r), h.b[r]};
    (h.rel[r] == Relation::eq ? equalities : inequalities).push_back(std::move(row));
  }

  std::vector<RatVector> pool;
  for (std::size_t t = 0; t < trials && pool.size() < kMaxVertices; ++t) {
    const Rat radius(static_cast<long>(1) << draw(rng, 4));
    std::vector<Row> candidates = inequalities;
    for (std::size_t i = 0; i < n; ++i) {
      candidates.push_back({unit_vector(n, i), radius});
      candidates.push_back({-unit_vector(n, i), radius});
    }
    for (std::size_t i = candidates.size(); i > 1; --i) std::swap(candidates[i - 1], candidates[draw(rng, i)]);

    std::vector<RatVector> chosen;
    RatVector rhs;
    std::size_t current_rank = 0;
    auto try_add = [&](const Row& row) {
      chosen.push_back(row.coeffs);
      if (rank(RatMatrix::from_rows(chosen, n)) > current_rank) {
        ++current_rank;
        rhs.push_back(row.rhs);
      } else {
        chosen.pop_back();
      }
    };
    for (const Row& row : equalities) {
      if (current_rank < n) try_add(row);
    }
    for (const Row& row : candidates) {
      if (current_rank == n) break;
      try_add(row);
    }
    const auto point = solve(RatMatrix::from_rows(chosen, n), rhs);
    if (!point || !member(h, *point)) continue;
    bool in_box = true;
    for (const Rat& x : *point) in_box = in_box && abs(x) <= radius;
    if (!in_box) continue;
    if (std::find(pool.begin(), pool.end(), *point) == pool.end()) pool.push_back(*point);
  }

  const std::size_t vertex_count = pool.size();
  for (std::size_t i = 0; i < vertex_count; ++i) {
    for (std::size_t j = i + 1; j < vertex_count; ++j) pool.push_back(Rat(1, 2) * (pool[i] + pool[j]));
  }
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      if (!member(h, componentwise_max(pool[i], pool[j]))) return Refuted{pool[i], pool[j], true};
      if (!member(h, componentwise_min(pool[i], pool[j]))) return Refuted{pool[i], pool[j], false};
    }
  }
  return NoRefutation{pool.size()};
}

}  // namespace dlat
