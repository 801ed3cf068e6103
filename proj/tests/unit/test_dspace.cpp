#include <doctest.h>

#include <random>
#include <set>
#include <variant>

#include "dlat/dspace.hpp"
#include "dlat/errors.hpp"
#include "dlat/linalg.hpp"
#include "test_support.hpp"

using namespace dlat;
using dlat::testing::q;

namespace {

NNDBasis basis_of(const NNDResult& r) {
  REQUIRE(std::holds_alternative<NNDBasis>(r));
  return std::get<NNDBasis>(r);
}

// Random NND basis in R^n: disjoint supports, positive entries.
NNDBasis random_nnd(std::mt19937_64& rng, std::size_t n) {
  std::vector<int> owner(n);
  const std::size_t groups = 1 + rng() % n;
  for (int& o : owner) o = static_cast<int>(rng() % (groups + 1)) - 1;  // -1 = uncovered
  NNDBasis b{n, {}};
  for (std::size_t g = 0; g < groups; ++g) {
    RatVector v = zeros(n);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (owner[i] == static_cast<int>(g)) {
        v[i] = q(1 + static_cast<long>(rng() % 4), 1 + static_cast<long>(rng() % 3));
        any = true;
      }
    }
    if (any) b.vectors.push_back(v);
  }
  return b;
}

RatVector root_normalized(RatVector v) {
  for (const Rat& x : v) {
    if (sgn(x) != 0) {
      const Rat s = x;
      for (Rat& y : v) y /= s;
      break;
    }
  }
  return v;
}

}  // namespace

TEST_CASE("is_nnd examples") {
  CHECK(is_nnd({{q(1), q(0), q(0)}, {q(0), q(2), q(6)}}));
  CHECK_FALSE(is_nnd({{q(1), q(1), q(0)}, {q(0), q(1), q(1)}}));
  CHECK_FALSE(is_nnd({{q(1), q(-1)}}));
  CHECK(is_nnd({{q(0), q(0)}}));
}

TEST_CASE("nnd_basis examples") {
  const NNDBasis b = basis_of(nnd_basis({zeros(3), {{q(1), q(2), q(6)}}}));
  CHECK(b.vectors == std::vector<RatVector>{{q(1), q(2), q(6)}});

  const NNDResult r = nnd_basis({zeros(2), {{q(1), q(-1)}}});
  REQUIRE(std::holds_alternative<NotDistributive>(r));
  const auto& w = std::get<NotDistributive>(r);
  CHECK(in_span({{q(1), q(-1)}}, w.x));
  CHECK(in_span({{q(1), q(-1)}}, w.y));
  CHECK_FALSE(in_span({{q(1), q(-1)}}, componentwise_max(w.x, w.y)));

  const NNDBasis diag = basis_of(nnd_basis({zeros(4), {{q(1), q(1), q(1), q(1)}}}));
  CHECK(diag.vectors == std::vector<RatVector>{{q(1), q(1), q(1), q(1)}});
}

TEST_CASE("nnd_basis combines generators and handles the trivial subspace") {
  const NNDBasis b = basis_of(nnd_basis({zeros(3), {{q(1), q(1), q(0)}, {q(1), q(-1), q(0)}}}));
  CHECK(b.vectors == std::vector<RatVector>{{q(1), q(0), q(0)}, {q(0), q(1), q(0)}});
  CHECK(basis_of(nnd_basis({zeros(2), {}})).vectors.empty());
  CHECK_THROWS_AS(nnd_basis({zeros(20), {unit_vector(20, 0)}}), CapacityError);
}

TEST_CASE("support-minimal vectors of a plane") {
  const auto v = support_minimal_vectors({{q(1), q(1), q(0)}, {q(0), q(1), q(1)}}, 3);
  CHECK(std::set<RatVector>(v.begin(), v.end()) ==
        std::set<RatVector>{{q(1), q(0), q(-1)}, {q(1), q(1), q(0)}, {q(0), q(1), q(1)}});
}

TEST_CASE("netmatrix_from_nnd examples") {
  const ArcParamDigraph d = netmatrix_from_nnd({3, {{q(1), q(2), q(6)}}});
  CHECK(d == ArcParamDigraph(3, {{1, 2, q(2)}, {2, 3, q(3)}}));
  CHECK(netmatrix_from_nnd({2, {}}) == ArcParamDigraph(2, {{1, 1, q(0)}, {2, 2, q(0)}}));
  CHECK(netmatrix_from_nnd({2, {{q(1), q(1)}}}) == ArcParamDigraph(2, {{1, 2, q(1)}}));
}

TEST_CASE("kernel_nnd_basis examples") {
  CHECK(kernel_nnd_basis(netmatrix_from_nnd({3, {{q(1), q(2), q(6)}}})).vectors ==
        std::vector<RatVector>{{q(1), q(2), q(6)}});
  CHECK(kernel_nnd_basis(ArcParamDigraph(2, {{1, 1, q(0)}, {2, 2, q(0)}})).vectors.empty());
  CHECK(kernel_nnd_basis(ArcParamDigraph(2, {{1, 2, q(5)}})).vectors == std::vector<RatVector>{{q(1), q(5)}});
  CHECK_THROWS_AS(kernel_nnd_basis(testing::g1()), PreconditionError);
}

TEST_CASE("potential kernel agrees with the transposed network matrix") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 80; ++trial) {
    const ArcParamDigraph d = testing::random_graph(rng);
    const NNDBasis b = potential_kernel_basis(d);
    CHECK(is_nnd(b.vectors));
    const RatMatrix nt = network_matrix(d).transposed();
    CHECK(b.vectors.size() == kernel_basis(nt).size());
    for (const RatVector& v : b.vectors) CHECK(is_zero(nt * v));
  }
}

TEST_CASE("netmatrix round trip on random NND bases") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const NNDBasis b = random_nnd(rng, 1 + rng() % 8);
    const NNDBasis back = kernel_nnd_basis(netmatrix_from_nnd(b));
    std::set<RatVector> expected;
    for (const RatVector& v : b.vectors) expected.insert(root_normalized(v));
    CHECK(std::set<RatVector>(back.vectors.begin(), back.vectors.end()) == expected);
  }
}
