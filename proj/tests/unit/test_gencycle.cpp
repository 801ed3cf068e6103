#include <doctest.h>

#include <random>
#include <set>

#include "dlat/bonds.hpp"
#include "dlat/errors.hpp"
#include "dlat/gencycle.hpp"
#include "test_support.hpp"

using namespace dlat;
using dlat::testing::q;

namespace {

std::set<SignedArcSet> support_signs(const std::vector<CombSupport>& supports) {
  std::set<SignedArcSet> out;
  for (const CombSupport& h : supports) out.insert(h.signs);
  return out;
}

ArcParamDigraph two_loops() { return ArcParamDigraph(1, {{1, 1, q(3)}, {1, 1, q(1, 3)}}); }

}  // namespace

TEST_CASE("classify_cycle examples") {
  CHECK(classify_cycle(testing::g1(), Walk{{{0, 1}, {1, 1}, {2, -1}}}) == CycleClass::breakeven);
  CHECK(classify_cycle(testing::g2(), Walk{{{0, 1}, {1, 1}}}) == CycleClass::gainy);
  CHECK(classify_cycle(testing::g2(), Walk{{{2, 1}, {1, 1}}}) == CycleClass::lossy);
  const ArcParamDigraph zero_loop(1, {{1, 1, q(0)}});
  CHECK(classify_cycle(zero_loop, Walk{{{0, 1}}}) == CycleClass::lossy);
  CHECK(classify_cycle(zero_loop, Walk{{{0, -1}}}) == CycleClass::gainy);
  CHECK_THROWS_AS(classify_cycle(testing::g1(), Walk{{{0, 1}}}), PreconditionError);
}

TEST_CASE("inner_flow examples") {
  const ArcParamDigraph d = testing::g1();
  const Walk w{{{0, 1}, {1, 1}}};
  CHECK(inner_flow(d, w, q(3)) == RatVector{q(3), q(1), q(0)});
  CHECK(inner_flow(d, Walk{{{2, 1}}}, q(5)) == RatVector{q(0), q(0), q(5)});
  CHECK(inner_flow(d, w, q(6)) == q(2) * inner_flow(d, w, q(3)));
  CHECK_THROWS_AS(inner_flow(d, w, q(0)), PreconditionError);
  CHECK_THROWS_AS(inner_flow(d, Walk{{{0, 1}, {2, 1}}}, q(1)), PreconditionError);
}

TEST_CASE("last walk value follows from the multiplier") {
  std::mt19937_64 rng(41);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 100; ++trial) {
    const ArcParamDigraph d = testing::random_graph(rng, 5, 8);
    // Random walk without repeated arcs or loops.
    Walk w;
    std::size_t at = 1 + rng() % d.vertex_count();
    std::set<std::size_t> used;
    for (int step = 0; step < 5; ++step) {
      std::vector<WalkStep> options;
      for (std::size_t a = 0; a < d.arc_count(); ++a) {
        const Arc& arc = d.arc(a);
        if (arc.is_loop() || used.contains(a)) continue;
        if (arc.tail == at) options.push_back({a, 1});
        if (arc.head == at) options.push_back({a, -1});
      }
      if (options.empty()) break;
      const WalkStep s = options[rng() % options.size()];
      w.steps.push_back(s);
      used.insert(s.arc);
      at = step_target(d, s);
    }
    if (w.empty()) continue;
    ++checked;
    const Rat f0 = q(1 + static_cast<long>(rng() % 4), 1 + static_cast<long>(rng() % 3));
    const RatVector f = inner_flow(d, w, f0);
    const WalkStep& first = w.steps.front();
    const WalkStep& last = w.steps.back();
    const Rat l0 = d.arc(first.arc).lambda;
    const Rat lk = d.arc(last.arc).lambda;
    Rat k = first.dir * last.dir;
    if (first.dir > 0) k *= l0;
    if (last.dir < 0) k /= lk;
    const Rat lw = multiplier(d, signed_support(d, w));
    CHECK(f[last.arc] == k / lw * f0);
  }
  CHECK(checked == 100);
}

TEST_CASE("enumerate_comb_support examples") {
  const auto s1 = enumerate_comb_support(testing::g1());
  REQUIRE(s1.size() == 1);
  CHECK(s1[0].kind == SupportKind::breakeven_cycle);
  CHECK(s1[0].flow == RatVector{q(1), q(1, 3), q(-1, 3)});

  const auto s2 = enumerate_comb_support(testing::g2());
  REQUIRE(s2.size() == 1);
  CHECK(s2[0].kind == SupportKind::bicycle);
  CHECK(s2[0].signs == SignedArcSet(std::vector<int>{1, 1, 1}));
  CHECK(s2[0].flow == RatVector{q(1), q(3), q(2)});

  const auto s3 = enumerate_comb_support(two_loops());
  REQUIRE(s3.size() == 1);
  CHECK(s3[0].kind == SupportKind::bicycle);
  CHECK(s3[0].connector.empty());
  CHECK(s3[0].flow == RatVector{q(1), q(3)});
}

TEST_CASE("bicycle with a connecting path") {
  // Gainy loop at 1, lossy loop at 3, path 1 - 2 - 3 with one backward arc.
  const ArcParamDigraph d(3, {{1, 1, q(2)}, {1, 2, q(1)}, {3, 2, q(2)}, {3, 3, q(1, 2)}});
  const auto s = enumerate_comb_support(d);
  REQUIRE(s.size() == 1);
  CHECK(s[0].kind == SupportKind::bicycle);
  CHECK(s[0].connector.size() == 2);
  CHECK(is_zero(network_matrix(d) * s[0].flow));
  CHECK(SignedArcSet::of(s[0].flow) == s[0].signs);
  CHECK(s[0].signs == signed_circuit_oracle(d).front());
}

TEST_CASE("unit loops are breakeven cycles of length one") {
  const ArcParamDigraph d(1, {{1, 1, q(1)}});
  const auto s = enumerate_comb_support(d);
  REQUIRE(s.size() == 1);
  CHECK(s[0].kind == SupportKind::breakeven_cycle);
  CHECK(s[0].flow == RatVector{q(1)});
}

TEST_CASE("flow_of_support rejects non-circuits") {
  const ArcParamDigraph d = testing::g2();
  CombSupport h;
  h.kind = SupportKind::breakeven_cycle;
  h.cycle = Walk{{{0, 1}, {1, 1}}};
  CHECK_THROWS_AS(flow_of_support(d, h), NotACircuit);
  h.kind = SupportKind::bicycle;
  h.lossy = Walk{{{0, 1}, {1, 1}}};
  CHECK_THROWS_AS(flow_of_support(d, h), NotACircuit);
  h.lossy = Walk{{{2, -1}, {1, -1}}};  // orientations disagree on arc 1
  CHECK_THROWS_AS(flow_of_support(d, h), NotACircuit);
  h.lossy = Walk{{{2, 1}, {1, 1}}};
  CHECK(flow_of_support(d, h) == RatVector{q(1), q(3), q(2)});
}

TEST_CASE("bicircular balance examples") {
  const auto s1 = enumerate_comb_support(testing::g1());
  CHECK(bicircular_balance(s1[0], {q(1), q(-2), q(1)}) == 0);
  const auto s2 = enumerate_comb_support(testing::g2());
  CHECK(bicircular_balance(s2[0], {q(-4), q(2), q(-1)}) == 0);
  CHECK(bicircular_balance(s2[0], s2[0].flow) == 14);
}

TEST_CASE("generalized Delta-bonds") {
  const ArcParamDigraph d = testing::g2();
  CHECK(is_generalized_delta_bond(d, {q(0), q(3), q(0)}, {}, {q(-4), q(2), q(-1)}));
  CHECK_FALSE(is_generalized_delta_bond(d, {q(-5), q(3), q(0)}, {}, {q(-4), q(2), q(-1)}));
  const RatVector c{q(-4), q(2), q(-1)};
  CHECK(is_generalized_delta_bond(d, c, {}, c));
  const DeltaSpec one{{SignedArcSet(std::vector<int>{1, 1, 1}), q(1)}};
  CHECK_FALSE(is_generalized_delta_bond(d, {q(9), q(9), q(9)}, one, {q(-4), q(2), q(-1)}));
  const auto w = delta_spec_witness(d, one);
  REQUIRE(w.has_value());
  CHECK(is_generalized_delta_bond(d, *w, one, *w));
  CHECK_THROWS_AS(delta_spec_witness(d, {{SignedArcSet(std::vector<int>{1, 0, 0}), q(1)}}), PreconditionError);
}

TEST_CASE("signed_circuit_oracle examples") {
  CHECK(signed_circuit_oracle(testing::g1()) == std::vector<SignedArcSet>{SignedArcSet(std::vector<int>{1, 1, -1})});
  CHECK(signed_circuit_oracle(testing::g2()) == std::vector<SignedArcSet>{SignedArcSet(std::vector<int>{1, 1, 1})});
  CHECK(signed_circuit_oracle(testing::unit_digon()) == std::vector<SignedArcSet>{SignedArcSet(std::vector<int>{1, 1})});
  CHECK_THROWS_AS(signed_circuit_oracle(ArcParamDigraph(1, std::vector<Arc>(15, Arc{1, 1, q(1)}))), CapacityError);
}

TEST_CASE("enumeration matches the circuit oracle on random digraphs") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 80; ++trial) {
    const ArcParamDigraph d = testing::random_graph(rng);
    const auto supports = enumerate_comb_support(d);
    const auto oracle = signed_circuit_oracle(d);
    CHECK(support_signs(supports) == std::set<SignedArcSet>(oracle.begin(), oracle.end()));
    for (const CombSupport& h : supports) {
      CHECK(is_zero(network_matrix(d) * h.flow));
      CHECK(SignedArcSet::of(h.flow) == h.signs);
      CHECK(testing::kernel_dimension_on(d, h.signs.support()) == 1);
      CHECK(flow_of_support(d, h) == h.flow);
    }
    // Balances characterize the image of the transposed network matrix.
    for (int k = 0; k < 20; ++k) {
      const RatVector x = k % 2 ? testing::random_vector(rng, d.arc_count())
                                : network_matrix(d).transposed() * testing::random_vector(rng, d.vertex_count());
      bool balanced = true;
      for (const CombSupport& h : supports) balanced = balanced && sgn(bicircular_balance(h, x)) == 0;
      CHECK(balanced == in_bond_space(d, x));
    }
  }
}

TEST_CASE("cycle enumeration cap") {
  std::vector<Arc> arcs;
  for (int k = 0; k < 6; ++k) arcs.push_back({1, 2});
  CHECK(enumerate_cycles(ArcParamDigraph(2, arcs)).size() == 15);
  CHECK_THROWS_AS(enumerate_cycles(ArcParamDigraph(2, arcs), 10), CapacityError);
}
