#include <doctest.h>

#include <random>

#include "dlat/dspace.hpp"
#include "dlat/errors.hpp"
#include "dlat/gencycle.hpp"
#include "dlat/linalg.hpp"
#include "dlat/planar.hpp"
#include "test_support.hpp"

using namespace dlat;
using dlat::testing::q;

namespace {

PlanarEmbedding g1_embedding() { return {testing::g1(), testing::g1_faces()}; }
PlanarEmbedding wheel_embedding() { return {testing::wheel(), testing::wheel_faces()}; }

RatVector random_flow(std::mt19937_64& rng, const ArcParamDigraph& d) {
  RatVector f = zeros(d.arc_count());
  for (const RatVector& k : kernel_basis(network_matrix(d))) f = f + testing::random_small_rat(rng) * k;
  return f;
}

}  // namespace

TEST_CASE("is_breakeven examples") {
  const BreakevenCheck a = is_breakeven(testing::g1());
  CHECK(a.breakeven);
  CHECK(a.mu == RatVector{q(0), q(1), q(2), q(6)});

  const BreakevenCheck b = is_breakeven(testing::g2());
  CHECK_FALSE(b.breakeven);
  REQUIRE(b.witness.has_value());
  CHECK(multiplier(testing::g2(), signed_support(testing::g2(), *b.witness)) != 1);

  CHECK(is_breakeven(testing::wheel()).breakeven);
  CHECK_FALSE(is_breakeven(ArcParamDigraph(1, {{1, 1, q(0)}})).breakeven);
}

TEST_CASE("breakeven test agrees with positive kernel vectors") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    const ArcParamDigraph d = testing::random_graph(rng);
    const bool positive = potential_kernel_basis(d).vectors.size() == component_count(d);
    CHECK(is_breakeven(d).breakeven == positive);
  }
}

TEST_CASE("breakeven_parameterization") {
  const ArcParamDigraph skeleton(3, {{1, 2}, {2, 3}, {1, 3}});
  CHECK(breakeven_parameterization(skeleton, {q(1), q(2), q(6)}) == testing::g1());
  CHECK(breakeven_parameterization(skeleton, {q(1), q(1), q(1)}) == skeleton);
  CHECK_THROWS_AS(breakeven_parameterization(skeleton, {q(1), q(0), q(1)}), PreconditionError);
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    const ArcParamDigraph d = testing::random_graph(rng);
    RatVector mu(d.vertex_count());
    for (Rat& m : mu) m = q(1 + static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 5));
    CHECK(is_breakeven(breakeven_parameterization(d, mu)).breakeven);
  }
}

TEST_CASE("dual digraph") {
  const ArcParamDigraph d = dual_digraph(g1_embedding());
  CHECK(d.vertex_count() == 2);
  CHECK(d.arc(0) == Arc{2, 1, q(1)});
  CHECK(d.arc(1) == Arc{2, 1, q(1)});
  CHECK(d.arc(2) == Arc{1, 2, q(1)});

  const PlanarEmbedding digon{testing::unit_digon(), {Walk{{{0, 1}, {1, 1}}}, Walk{{{1, -1}, {0, -1}}}}};
  const ArcParamDigraph dd = dual_digraph(digon);
  CHECK(dd.vertex_count() == 2);
  CHECK(dd.arc_count() == 2);

  const ArcParamDigraph wd = dual_digraph(wheel_embedding());
  CHECK(wd.vertex_count() == 5);
  CHECK(wd.arc(4) == Arc{5, 1, q(1)});
}

TEST_CASE("embedding validation") {
  PlanarEmbedding bad = g1_embedding();
  bad.faces.pop_back();
  CHECK_THROWS_AS(validate(bad), EmbeddingError);
  PlanarEmbedding twice = g1_embedding();
  twice.faces[1] = twice.faces[0];
  CHECK_THROWS_AS(validate(twice), EmbeddingError);
  const PlanarEmbedding bridge{testing::unit_path(), {Walk{{{0, 1}, {1, 1}, {1, -1}, {0, -1}}}}};
  CHECK_THROWS_AS(validate(bridge), EmbeddingError);
  const PlanarEmbedding loop{ArcParamDigraph(1, {{1, 1, q(0)}}), {Walk{{{0, 1}}}, Walk{{{0, -1}}}}};
  CHECK_THROWS_AS(validate(loop), EmbeddingError);
}

TEST_CASE("dualize G1") {
  const DualResult r = dualize_flow_space(g1_embedding());
  CHECK(r.m.row(0) == RatVector{q(1), q(1, 3), q(-1, 3)});
  CHECK(r.m.row(1) == RatVector{q(-1), q(-1, 3), q(1, 3)});
  CHECK(r.sigma == RatVector{q(1), q(3), q(3)});
  CHECK(r.m * RatMatrix::diagonal(r.sigma) == network_matrix(r.dual));
  for (std::size_t a = 0; a < 3; ++a) CHECK(r.dual.arc(a).lambda == 1);
  CHECK_THROWS_AS(dualize_flow_space(PlanarEmbedding{testing::g2(), {Walk{{{0, 1}, {1, 1}}}}}), EmbeddingError);
}

TEST_CASE("dualize the wheel reduces to classic duality") {
  const DualResult r = dualize_flow_space(wheel_embedding());
  CHECK(r.sigma == RatVector(8, q(1)));
  for (const Arc& a : r.dual.arcs()) CHECK(a.lambda == 1);
  CHECK(r.dual == dual_digraph(wheel_embedding()));
}

TEST_CASE("re-parameterizing by vertex multipliers keeps the dual skeleton") {
  const ArcParamDigraph skeleton = testing::wheel();
  const ArcParamDigraph scaled = breakeven_parameterization(skeleton, {q(1), q(2), q(1, 3), q(5), q(3, 2)});
  const DualResult r = dualize_flow_space({scaled, testing::wheel_faces()});
  const ArcParamDigraph plain = dual_digraph({skeleton, testing::wheel_faces()});
  for (std::size_t a = 0; a < plain.arc_count(); ++a) {
    CHECK(r.dual.arc(a).tail == plain.arc(a).tail);
    CHECK(r.dual.arc(a).head == plain.arc(a).head);
  }
  CHECK(r.m * RatMatrix::diagonal(r.sigma) == network_matrix(r.dual));
}

TEST_CASE("flows map to dual bonds and back") {
  const PlanarEmbedding e = g1_embedding();
  const DualResult r = dualize_flow_space(e);
  CHECK(flow_to_bond(e, r, zeros(3)) == zeros(3));
  const RatVector f{q(3), q(1), q(-1)};
  const RatVector x = flow_to_bond(e, r, f);
  CHECK(bond_to_flow(r, x) == f);
  for (const CombSupport& h : enumerate_comb_support(r.dual)) CHECK(bicircular_balance(h, x) == 0);
  CHECK_THROWS_AS(flow_to_bond(e, r, {q(1), q(0), q(0)}), PreconditionError);

  std::mt19937_64 rng(57);
  const PlanarEmbedding w = wheel_embedding();
  const DualResult rw = dualize_flow_space(w);
  for (int k = 0; k < 50; ++k) {
    const RatVector g = random_flow(rng, w.base);
    const RatVector y = flow_to_bond(w, rw, g);
    CHECK(in_bond_space(rw.dual, y));
    CHECK(bond_to_flow(rw, y) == g);
  }
}

TEST_CASE("flow lattice") {
  const PlanarEmbedding e = g1_embedding();
  const RatVector c{q(10), q(10), q(10)};
  const RatVector f{q(3), q(1), q(-1)};
  const RatVector g{q(-3), q(-1), q(1)};
  CHECK(flow_join(e, c, f, f) == f);
  const RatVector j = flow_join(e, c, f, g);
  const RatVector m = flow_meet(e, c, f, g);
  for (const RatVector& v : {j, m}) {
    CHECK(is_zero(network_matrix(e.base) * v));
    CHECK(dominated_by(v, c));
  }
  CHECK_THROWS_AS(flow_join(e, c, f, {q(30), q(10), q(-10)}), PreconditionError);

  const PlanarFlowLattice lattice(wheel_embedding(), RatVector(8, q(1)));
  std::mt19937_64 rng(59);
  std::vector<RatVector> flows;
  for (int k = 0; k < 200 && flows.size() < 12; ++k) {
    const RatVector h = random_flow(rng, testing::wheel());
    if (lattice.is_feasible(h)) flows.push_back(h);
  }
  CHECK(flows.size() >= 6);
  for (const RatVector& a : flows) {
    for (const RatVector& b : flows) {
      const RatVector jab = lattice.join(a, b);
      CHECK(lattice.is_feasible(jab));
      CHECK(lattice.is_feasible(lattice.meet(a, b)));
      CHECK(lattice.meet(a, jab) == a);
      CHECK(jab == lattice.join(b, a));
    }
  }
}
