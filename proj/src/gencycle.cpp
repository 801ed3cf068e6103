#include "dlat/gencycle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>

#include "dlat/errors.hpp"
#include "dlat/linalg.hpp"

namespace dlat {

const char* to_string(CycleClass c) {
  switch (c) {
    case CycleClass::lossy:
      return "lossy";
    case CycleClass::gainy:
      return "gainy";
    case CycleClass::breakeven:
      return "breakeven";
  }
  return "?";
}

CycleClass classify_cycle(const ArcParamDigraph& d, const Walk& cycle) {
  if (!is_closed(d, cycle)) throw PreconditionError("cycle must be a closed walk");
  const SignedArcSet s = signed_support(d, cycle);
  if (cycle.size() == 1 && sgn(d.arc(cycle.steps[0].arc).lambda) == 0) {
    return cycle.steps[0].dir > 0 ? CycleClass::lossy : CycleClass::gainy;
  }
  const int cmp = ::cmp(multiplier(d, s), Rat(1));
  if (cmp < 0) return CycleClass::lossy;
  if (cmp > 0) return CycleClass::gainy;
  return CycleClass::breakeven;
}

RatVector inner_flow(const ArcParamDigraph& d, const Walk& w, const Rat& f0) {
  check_walk(d, w);
  if (sgn(f0) == 0) throw PreconditionError("inner flow needs a nonzero initial value");
  signed_support(d, w);
  if (w.size() > 1) {
    for (const WalkStep& s : w.steps) {
      if (d.arc(s.arc).is_loop()) throw PreconditionError("loops only form single-step walks");
    }
  }
  RatVector f = zeros(d.arc_count());
  Rat value = f0;
  f[w.steps[0].arc] = value;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    const WalkStep& in = w.steps[i];
    const WalkStep& out = w.steps[i + 1];
    const Rat arriving = in.dir > 0 ? value : Rat(-d.arc(in.arc).lambda * value);
    value = out.dir > 0 ? Rat(arriving / d.arc(out.arc).lambda) : Rat(-arriving);
    f[out.arc] = value;
  }
  return f;
}

std::vector<Walk> enumerate_cycles(const ArcParamDigraph& d, std::size_t cap) {
  const std::size_t n = d.vertex_count();
  std::vector<Walk> cycles;
  auto emit = [&](Walk w) {
    if (cycles.size() >= cap) throw CapacityError("more than " + std::to_string(cap) + " cycles");
    cycles.push_back(std::move(w));
  };
  for (std::size_t a = 0; a < d.arc_count(); ++a) {
    if (d.arc(a).is_loop()) emit(Walk{{{a, 1}}});
  }

  std::vector<std::vector<std::size_t>> incident(n + 1);
  for (std::size_t a = 0; a < d.arc_count(); ++a) {
    const Arc& arc = d.arc(a);
    if (arc.is_loop()) continue;
    incident[arc.tail].push_back(a);
    incident[arc.head].push_back(a);
  }

  std::vector<bool> on_path(n + 1, false);
  Walk path;
  std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t s, std::size_t u) {
    for (std::size_t a : incident[u]) {
      const Arc& arc = d.arc(a);
      const int dir = arc.tail == u ? 1 : -1;
      const std::size_t w = dir > 0 ? arc.head : arc.tail;
      if (w == s) {
        if (!path.empty() && path.steps.front().arc < a) {
          Walk c = path;
          c.steps.push_back({a, dir});
          emit(std::move(c));
        }
      } else if (w > s && !on_path[w]) {
        on_path[w] = true;
        path.steps.push_back({a, dir});
        extend(s, w);
        path.steps.pop_back();
        on_path[w] = false;
      }
    }
  };
  for (std::size_t s = 1; s <= n; ++s) {
    on_path[s] = true;
    extend(s, s);
    on_path[s] = false;
  }
  return cycles;
}

namespace {

std::set<std::size_t> vertex_set(const ArcParamDigraph& d, const Walk& w) {
  const auto vs = walk_vertices(d, w);
  return {vs.begin(), vs.end()};
}

void normalize_leading(RatVector& f) {
  for (const Rat& v : f) {
    if (sgn(v) != 0) {
      const Rat scale = abs(v);
      for (Rat& x : f) x /= scale;
      return;
    }
  }
}

bool is_flow(const ArcParamDigraph& d, const RatVector& f) {
  return is_zero(network_matrix(d) * f);
}

// Excess at the start vertex of the inner flow around `cycle`, rotated to
// start at v, together with that flow.
std::pair<RatVector, Rat> cycle_flow_at(const ArcParamDigraph& d, const Walk& cycle, std::size_t v) {
  const Walk r = rotated_to(d, cycle, v);
  RatVector f = inner_flow(d, r, Rat(r.steps[0].dir));
  const Rat e = excess(d, f, v);
  return {std::move(f), e};
}

RatVector bicycle_flow(const ArcParamDigraph& d, const CombSupport& h) {
  if (classify_cycle(d, h.cycle) != CycleClass::gainy) throw NotACircuit("first cycle of a bicycle must be gainy");
  if (classify_cycle(d, h.lossy) != CycleClass::lossy) throw NotACircuit("second cycle of a bicycle must be lossy");
  const SignedArcSet sg = signed_support(d, h.cycle);
  const SignedArcSet sl = signed_support(d, h.lossy);
  const std::set<std::size_t> vg = vertex_set(d, h.cycle);
  const std::set<std::size_t> vl = vertex_set(d, h.lossy);
  std::vector<std::size_t> shared_vertices;
  std::set_intersection(vg.begin(), vg.end(), vl.begin(), vl.end(), std::back_inserter(shared_vertices));

  if (h.connector.empty()) {
    std::size_t shared_arcs = 0;
    for (std::size_t a = 0; a < d.arc_count(); ++a) {
      if (sg[a] != 0 && sl[a] != 0) {
        if (sg[a] != sl[a]) throw NotACircuit("cycles disagree on a common arc");
        ++shared_arcs;
      }
    }
    if (shared_vertices.size() != shared_arcs + 1) {
      throw NotACircuit("cycles of a bicycle must meet in a single path");
    }
    const std::size_t v = shared_vertices.front();
    const auto [fg, eg] = cycle_flow_at(d, h.cycle, v);
    const auto [fl, el] = cycle_flow_at(d, h.lossy, v);
    const Rat beta = -eg / el;
    return fg + beta * fl;
  }

  if (!shared_vertices.empty()) throw NotACircuit("connected cycles take an empty connector");
  const SignedArcSet sw = signed_support(d, h.connector);
  const std::vector<std::size_t> path = walk_vertices(d, h.connector);
  std::set<std::size_t> seen;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (!seen.insert(path[i]).second) throw NotACircuit("connector repeats a vertex");
    const bool first = i == 0;
    const bool last = i + 1 == path.size();
    if (first && !vl.contains(path[i])) throw NotACircuit("connector must start on the lossy cycle");
    if (last && !vg.contains(path[i])) throw NotACircuit("connector must end on the gainy cycle");
    if (!first && !last && (vl.contains(path[i]) || vg.contains(path[i]))) {
      throw NotACircuit("connector must avoid both cycles internally");
    }
  }
  for (std::size_t a = 0; a < d.arc_count(); ++a) {
    if (sw[a] != 0 && d.arc(a).is_loop()) throw NotACircuit("connector contains a loop");
  }
  const std::size_t v = path.back();
  const std::size_t v_prime = path.front();
  const auto [fg, eg] = cycle_flow_at(d, h.cycle, v);
  const RatVector fw = inner_flow(d, h.connector, Rat(h.connector.steps[0].dir));
  const Rat alpha = -eg / excess(d, fw, v);
  const auto [fl, el] = cycle_flow_at(d, h.lossy, v_prime);
  const Rat beta = -alpha * excess(d, fw, v_prime) / el;
  return fg + alpha * fw + beta * fl;
}

SignedArcSet combined_signs(const ArcParamDigraph& d, const CombSupport& h) {
  SignedArcSet s(d.arc_count());
  auto add = [&](const Walk& w) {
    for (const WalkStep& st : w.steps) s.set(st.arc, st.dir);
  };
  add(h.cycle);
  add(h.connector);
  add(h.lossy);
  return s;
}

CombSupport flipped(const CombSupport& h) {
  CombSupport out = h;
  if (h.kind == SupportKind::breakeven_cycle) {
    out.cycle = reversed(h.cycle);
  } else {
    out.cycle = reversed(h.lossy);
    out.lossy = reversed(h.cycle);
    out.connector = reversed(h.connector);
  }
  out.signs = h.signs.negated();
  out.flow = -h.flow;
  return out;
}

}  // namespace

RatVector flow_of_support(const ArcParamDigraph& d, const CombSupport& h) {
  RatVector f;
  SignedArcSet signs;
  try {
    if (h.cycle.empty()) throw NotACircuit("support has no cycle");
    signs = combined_signs(d, h);
    if (!h.signs.empty() && h.signs.size() == d.arc_count() && h.signs != signs) {
      throw NotACircuit("signed support does not match the walks");
    }
    if (h.kind == SupportKind::breakeven_cycle) {
      if (!h.connector.empty() || !h.lossy.empty()) throw NotACircuit("breakeven cycle with extra walks");
      if (classify_cycle(d, h.cycle) != CycleClass::breakeven) throw NotACircuit("cycle is not breakeven");
      f = inner_flow(d, h.cycle, Rat(h.cycle.steps[0].dir));
    } else {
      if (h.lossy.empty()) throw NotACircuit("bicycle without a lossy cycle");
      // Only meeting cycles may share arcs; bicycle_flow checks those.
      const std::size_t total = h.cycle.size() + h.connector.size() + h.lossy.size();
      if (!h.connector.empty() && signs.support().size() != total) throw NotACircuit("walks of a bicycle overlap");
      f = bicycle_flow(d, h);
    }
  } catch (const NotACircuit&) {
    throw;
  } catch (const Error& e) {
    throw NotACircuit(e.what());
  }
  if (!is_flow(d, f) || SignedArcSet::of(f) != signs) {
    throw NotACircuit("walks do not carry a flow with their sign pattern");
  }
  normalize_leading(f);
  return f;
}

std::vector<CombSupport> enumerate_comb_support(const ArcParamDigraph& d, std::size_t cap) {
  std::vector<std::pair<Walk, CycleClass>> oriented;
  for (const Walk& c : enumerate_cycles(d, cap)) {
    for (const Walk& w : {c, reversed(c)}) oriented.emplace_back(w, classify_cycle(d, w));
  }

  std::map<SignedArcSet, CombSupport> found;
  std::size_t candidates = 0;
  auto record = [&](CombSupport h) {
    h.signs = combined_signs(d, h);
    try {
      h.flow = flow_of_support(d, h);
    } catch (const NotACircuit&) {
      return;
    }
    if (h.signs.canonical() != h.signs) h = flipped(h);
    found.try_emplace(h.signs, std::move(h));
  };

  for (const auto& [w, cls] : oriented) {
    if (cls == CycleClass::breakeven) record(CombSupport{SupportKind::breakeven_cycle, w, {}, {}, {}, {}});
  }

  std::vector<std::vector<std::size_t>> incident(d.vertex_count() + 1);
  for (std::size_t a = 0; a < d.arc_count(); ++a) {
    const Arc& arc = d.arc(a);
    if (arc.is_loop()) continue;
    incident[arc.tail].push_back(a);
    incident[arc.head].push_back(a);
  }

  for (const auto& [g, gcls] : oriented) {
    if (gcls != CycleClass::gainy) continue;
    const std::set<std::size_t> vg = vertex_set(d, g);
    for (const auto& [l, lcls] : oriented) {
      if (lcls != CycleClass::lossy) continue;
      const std::set<std::size_t> vl = vertex_set(d, l);
      const bool meet = std::any_of(vl.begin(), vl.end(), [&](std::size_t v) { return vg.contains(v); });
      if (meet) {
        record(CombSupport{SupportKind::bicycle, g, {}, l, {}, {}});
        continue;
      }
      // Every simple path from the lossy to the gainy cycle that avoids both
      // cycles in between.
      std::vector<bool> used(d.vertex_count() + 1, false);
      Walk path;
      std::function<void(std::size_t)> extend = [&](std::size_t u) {
        for (std::size_t a : incident[u]) {
          const Arc& arc = d.arc(a);
          const int dir = arc.tail == u ? 1 : -1;
          const std::size_t w = dir > 0 ? arc.head : arc.tail;
          if (used[w] || vl.contains(w)) continue;
          path.steps.push_back({a, dir});
          if (vg.contains(w)) {
            if (++candidates > cap) throw CapacityError("more than " + std::to_string(cap) + " connector paths");
            record(CombSupport{SupportKind::bicycle, g, path, l, {}, {}});
          } else {
            used[w] = true;
            extend(w);
            used[w] = false;
          }
          path.steps.pop_back();
        }
      };
      for (std::size_t start : vl) extend(start);
    }
  }

  std::vector<CombSupport> out;
  out.reserve(found.size());
  for (auto& [key, h] : found) out.push_back(std::move(h));
  return out;
}

Rat bicircular_balance(const CombSupport& h, const RatVector& x) { return dot(x, h.flow); }

bool is_generalized_delta_bond(const ArcParamDigraph& d, const RatVector& c, const DeltaSpec& delta,
                               const RatVector& x) {
  if (x.size() != d.arc_count() || c.size() != d.arc_count()) return false;
  if (!dominated_by(x, c)) return false;
  for (const CombSupport& h : enumerate_comb_support(d)) {
    const auto it = delta.find(h.signs);
    const Rat target = it == delta.end() ? Rat(0) : it->second;
    if (bicircular_balance(h, x) != target) return false;
  }
  return true;
}

std::optional<RatVector> delta_spec_witness(const ArcParamDigraph& d, const DeltaSpec& delta) {
  const auto supports = enumerate_comb_support(d);
  for (const auto& [key, value] : delta) {
    const bool known = std::any_of(supports.begin(), supports.end(), [&](const CombSupport& h) {
      return h.signs == key;
    });
    if (!known) throw PreconditionError("balance prescribed for a set outside the combinatorial support");
  }
  if (supports.empty()) return zeros(d.arc_count());
  std::vector<RatVector> rows;
  RatVector rhs;
  for (const CombSupport& h : supports) {
    rows.push_back(h.flow);
    const auto it = delta.find(h.signs);
    rhs.push_back(it == delta.end() ? Rat(0) : it->second);
  }
  return solve(RatMatrix::from_rows(rows, d.arc_count()), rhs);
}

std::vector<SignedArcSet> signed_circuit_oracle(const ArcParamDigraph& d, std::size_t cap) {
  const std::size_t m = d.arc_count();
  if (m > cap || m >= 32) throw CapacityError("circuit oracle limited to " + std::to_string(cap) + " arcs");
  const RatMatrix n = network_matrix(d);
  std::vector<std::uint32_t> circuits;
  std::vector<SignedArcSet> out;
  for (std::size_t k = 1; k <= m; ++k) {
    const std::uint32_t limit = std::uint32_t{1} << m;
    for (std::uint32_t s = (std::uint32_t{1} << k) - 1; s < limit;) {
      const bool contains_circuit =
          std::any_of(circuits.begin(), circuits.end(), [s](std::uint32_t c) { return (s & c) == c; });
      if (!contains_circuit) {
        std::vector<std::size_t> cols;
        for (std::size_t a = 0; a < m; ++a) {
          if (s >> a & 1) cols.push_back(a);
        }
        const auto kernel = kernel_basis(n.select_columns(cols));
        if (!kernel.empty()) {
          RatVector f = zeros(m);
          for (std::size_t i = 0; i < cols.size(); ++i) f[cols[i]] = kernel.front()[i];
          circuits.push_back(s);
          out.push_back(SignedArcSet::of(f).canonical());
        }
      }
      // Next subset with the same popcount.
      const std::uint32_t c = s & -s;
      const std::uint32_t r = s + c;
      if (r == 0) break;
      s = (((r ^ s) >> 2) / c) | r;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dlat
