#include <algorithm>
#include <random>
#include <set>

#include "dlat/bonds.hpp"
#include "dlat/cli.hpp"
#include "dlat/dpoly.hpp"
#include "dlat/dspace.hpp"
#include "dlat/errors.hpp"
#include "dlat/gencycle.hpp"
#include "dlat/linalg.hpp"
#include "dlat/planar.hpp"

namespace dlat::cli {

namespace {

using io::json;

json check(const std::string& name, bool pass, json counterexample = nullptr) {
  return {{"name", name}, {"pass", pass}, {"counterexample", pass ? json(nullptr) : std::move(counterexample)}};
}

Rat small_rat(std::mt19937_64& rng) {
  const long num = static_cast<long>(rng() % 7) - 3;
  const long den = static_cast<long>(rng() % 2) + 1;
  return Rat(num, den);
}

RatVector random_vector(std::mt19937_64& rng, std::size_t n) {
  RatVector v(n);
  for (Rat& x : v) {
    x = small_rat(rng);
    x.canonicalize();
  }
  return v;
}

bool contains_arcs(const SignedArcSet& big, const SignedArcSet& small) {
  for (std::size_t a = 0; a < small.size(); ++a) {
    if (small[a] != 0 && big[a] == 0) return false;
  }
  return true;
}

// A capacity vector for which `p0` is feasible with some slack.
RatVector capacities_around(const ArcParamDigraph& d, const RatVector& p0, std::mt19937_64& rng) {
  RatVector c = bond_of_potential(d, p0);
  for (Rat& x : c) x += Rat(static_cast<long>(rng() % 3));
  return c;
}

}  // namespace

json verify(const ArcParamDigraph& d, const VerifyOptions& options) {
  std::mt19937_64 rng(options.seed);
  const std::size_t n = d.vertex_count();
  const std::size_t m = d.arc_count();
  const RatMatrix net = network_matrix(d);
  json checks = json::array();

  const std::vector<CombSupport> supports = enumerate_comb_support(d, options.cap);
  std::size_t bicycles = 0;
  for (const CombSupport& h : supports) bicycles += h.kind == SupportKind::bicycle;

  if (m <= kDefaultOracleArcCap) {
    const std::vector<SignedArcSet> oracle = signed_circuit_oracle(d);
    std::set<SignedArcSet> computed;
    for (const CombSupport& h : supports) computed.insert(h.signs);
    const std::set<SignedArcSet> expected(oracle.begin(), oracle.end());
    json diff = nullptr;
    for (const SignedArcSet& s : expected) {
      if (!computed.contains(s)) {
        diff = {{"missing", io::to_json(s)}};
        break;
      }
    }
    if (diff.is_null()) {
      for (const SignedArcSet& s : computed) {
        if (!expected.contains(s)) {
          diff = {{"unexpected", io::to_json(s)}};
          break;
        }
      }
    }
    checks.push_back(check("comb-support-equals-circuits", diff.is_null(), diff));
  }

  {
    json bad = nullptr;
    for (const CombSupport& h : supports) {
      const auto lead = std::find_if(h.flow.begin(), h.flow.end(), [](const Rat& x) { return sgn(x) != 0; });
      if (!is_zero(net * h.flow) || SignedArcSet::of(h.flow) != h.signs || lead == h.flow.end() || *lead != 1) {
        bad = {{"signs", io::to_json(h.signs)}, {"flow", io::to_json(h.flow)}};
        break;
      }
    }
    checks.push_back(check("support-flows", bad.is_null(), bad));
  }

  if (options.claimed) {
    json bad = nullptr;
    std::size_t matched = 0;
    for (const json& entry : *options.claimed) {
      const SignedArcSet signs(entry.at("signs").get<std::vector<int>>());
      const RatVector flow = io::vector_from_json(entry.at("flow"));
      const auto it = std::find_if(supports.begin(), supports.end(),
                                   [&](const CombSupport& h) { return h.signs == signs; });
      if (it == supports.end()) {
        bad = {{"signs", io::to_json(signs)}, {"claimed", io::to_json(flow)}, {"computed", nullptr}};
        break;
      }
      if (it->flow != flow) {
        bad = {{"signs", io::to_json(signs)}, {"claimed", io::to_json(flow)}, {"computed", io::to_json(it->flow)}};
        break;
      }
      ++matched;
    }
    if (bad.is_null() && matched != supports.size()) {
      bad = {{"claimed_count", matched}, {"computed_count", supports.size()}};
    }
    checks.push_back(check("claimed-supports", bad.is_null(), bad));
  }

  {
    json bad = nullptr;
    for (const CombSupport& b : supports) {
      if (b.kind != SupportKind::bicycle) continue;
      for (const CombSupport& c : supports) {
        if (c.kind == SupportKind::breakeven_cycle && contains_arcs(b.signs, c.signs)) {
          bad = {{"bicycle", io::to_json(b.signs)}, {"breakeven_cycle", io::to_json(c.signs)}};
        }
      }
    }
    checks.push_back(check("bicycles-contain-no-breakeven-cycle", bad.is_null(), bad));
  }

  {
    const RatMatrix nt = net.transposed();
    json bad = nullptr;
    for (std::size_t k = 0; k < options.samples && bad.is_null(); ++k) {
      const RatVector x = k % 2 == 0 ? nt * random_vector(rng, n) : random_vector(rng, m);
      const bool image = in_bond_space(d, x);
      const bool balanced = std::all_of(supports.begin(), supports.end(),
                                        [&](const CombSupport& h) { return sgn(bicircular_balance(h, x)) == 0; });
      if (image != balanced) bad = {{"x", io::to_json(x)}, {"in_image", image}, {"balanced", balanced}};
    }
    checks.push_back(check("balances-characterize-bonds", bad.is_null(), bad));
  }

  {
    RatVector p0 = random_vector(rng, n);
    const DPolyhedron poly(d, capacities_around(d, p0, rng));
    std::vector<RatVector> members{p0};
    for (std::size_t k = 0; k < 200 && members.size() < 8; ++k) {
      RatVector p = p0;
      for (Rat& x : p) {
        Rat step(static_cast<long>(rng() % 5) - 2, 2);
        step.canonicalize();
        x += step;
      }
      if (member(poly, p) && std::find(members.begin(), members.end(), p) == members.end()) members.push_back(p);
    }
    json bad = nullptr;
    for (const RatVector& x : members) {
      for (const RatVector& y : members) {
        const RatVector hi = componentwise_max(x, y);
        const RatVector lo = componentwise_min(x, y);
        if (!member(poly, hi) || !member(poly, lo)) {
          bad = {{"x", io::to_json(x)}, {"y", io::to_json(y)}};
          break;
        }
        for (const RatVector& z : members) {
          const bool distributive =
              componentwise_max(x, componentwise_min(y, z)) ==
              componentwise_min(componentwise_max(x, y), componentwise_max(x, z));
          const bool absorbs = componentwise_max(x, componentwise_min(x, y)) == x;
          if (!distributive || !absorbs) {
            bad = {{"x", io::to_json(x)}, {"y", io::to_json(y)}, {"z", io::to_json(z)}};
            break;
          }
        }
        if (!bad.is_null()) break;
      }
      if (!bad.is_null()) break;
    }
    checks.push_back(check("potential-lattice", bad.is_null(), bad));
  }

  {
    const RatVector p0 = random_vector(rng, n);
    const ReducedSystem r = reduce(BondSystem(d, capacities_around(d, p0, rng)));
    json bad = nullptr;
    for (std::size_t k = 0; k < options.samples && bad.is_null(); ++k) {
      RatVector p = random_vector(rng, n);
      for (std::size_t v : r.pins) p[v - 1] = 0;
      const RatVector x = bond_of_potential(d, p);
      if (potential_of_bond(r, x) != p) bad = {{"p", io::to_json(p)}, {"x", io::to_json(x)}};
    }
    checks.push_back(check("bond-round-trip", bad.is_null(), bad));
  }

  {
    const BreakevenCheck be = is_breakeven(d);
    const bool positive_kernel = potential_kernel_basis(d).vectors.size() == component_count(d);
    json bad = nullptr;
    if (be.breakeven != positive_kernel) bad = {{"is_breakeven", be.breakeven}, {"positive_kernel", positive_kernel}};
    checks.push_back(check("breakeven-test", bad.is_null(), bad));
  }

  const bool pass = std::all_of(checks.begin(), checks.end(), [](const json& c) { return c.at("pass").get<bool>(); });
  return {{"seed", options.seed},
          {"breakeven_cycles", supports.size() - bicycles},
          {"bicycles", bicycles},
          {"checks", checks},
          {"pass", pass}};
}

}  // namespace dlat::cli
