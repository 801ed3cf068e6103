#include "dlat/planar.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "dlat/errors.hpp"
#include "dlat/gencycle.hpp"
#include "dlat/linalg.hpp"

namespace dlat {

BreakevenCheck is_breakeven(const ArcParamDigraph& d) {
  const std::size_t n = d.vertex_count();
  BreakevenCheck out;
  out.mu.assign(n + 1, Rat(0));
  const std::vector<std::size_t> tree = bfs_spanning_tree(d);
  std::vector<std::vector<std::size_t>> incident(n + 1);
  for (std::size_t a : tree) {
    incident[d.arc(a).tail].push_back(a);
    incident[d.arc(a).head].push_back(a);
  }
  std::vector<bool> seen(n + 1, false);
  for (std::size_t root = 1; root <= n; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    out.mu[root] = 1;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t a : incident[u]) {
        const Arc& arc = d.arc(a);
        const std::size_t w = arc.tail == u ? arc.head : arc.tail;
        if (seen[w]) continue;
        seen[w] = true;
        out.mu[w] = arc.tail == u ? Rat(out.mu[u] * arc.lambda) : Rat(out.mu[u] / arc.lambda);
        queue.push_back(w);
      }
    }
  }
  for (std::size_t a = 0; a < d.arc_count(); ++a) {
    const Arc& arc = d.arc(a);
    if (out.mu[arc.head] != out.mu[arc.tail] * arc.lambda) {
      out.witness = fundamental_cycle(d, tree, a);
      return out;
    }
  }
  out.breakeven = true;
  return out;
}

void validate(const PlanarEmbedding& e) {
  const ArcParamDigraph& d = e.base;
  if (d.vertex_count() == 0 || component_count(d) != 1) throw EmbeddingError("base digraph must be connected");
  std::vector<int> forward(d.arc_count(), -1);
  std::vector<int> backward(d.arc_count(), -1);
  for (std::size_t i = 0; i < e.faces.size(); ++i) {
    const Walk& face = e.faces[i];
    try {
      check_walk(d, face);
    } catch (const Error& err) {
      throw EmbeddingError("face " + std::to_string(i) + ": " + err.what());
    }
    if (!is_closed(d, face)) throw EmbeddingError("face " + std::to_string(i) + " is not closed");
    for (const WalkStep& s : face.steps) {
      if (d.arc(s.arc).is_loop()) throw EmbeddingError("loops are not supported in embeddings");
      std::vector<int>& slot = s.dir > 0 ? forward : backward;
      if (slot[s.arc] != -1) throw EmbeddingError("arc " + std::to_string(s.arc) + " used twice in one direction");
      slot[s.arc] = static_cast<int>(i);
    }
  }
  for (std::size_t a = 0; a < d.arc_count(); ++a) {
    if (forward[a] == -1 || backward[a] == -1) {
      throw EmbeddingError("arc " + std::to_string(a) + " must bound faces on both sides");
    }
    if (forward[a] == backward[a]) throw EmbeddingError("arc " + std::to_string(a) + " is a bridge");
  }
  const long euler = static_cast<long>(d.vertex_count()) - static_cast<long>(d.arc_count()) +
                     static_cast<long>(e.faces.size());
  if (euler != 2) throw EmbeddingError("Euler characteristic is " + std::to_string(euler) + ", expected 2");
}

ArcParamDigraph dual_digraph(const PlanarEmbedding& e) {
  validate(e);
  std::vector<Arc> arcs(e.base.arc_count());
  for (std::size_t i = 0; i < e.faces.size(); ++i) {
    for (const WalkStep& s : e.faces[i].steps) {
      if (s.dir > 0) {
        arcs[s.arc].head = i + 1;
      } else {
        arcs[s.arc].tail = i + 1;
      }
    }
  }
  return ArcParamDigraph(e.faces.size(), std::move(arcs));
}

DualResult dualize_flow_space(const PlanarEmbedding& e) {
  const ArcParamDigraph skeleton = dual_digraph(e);
  const ArcParamDigraph& d = e.base;
  const BreakevenCheck check = is_breakeven(d);
  if (!check.breakeven) {
    std::string cycle;
    for (const WalkStep& s : check.witness->steps) {
      cycle += (cycle.empty() ? "" : " ") + std::string(s.dir > 0 ? "+" : "-") + std::to_string(s.arc);
    }
    throw PreconditionError("digraph is not breakeven; cycle " + cycle + " has multiplier != 1");
  }

  const std::size_t m = d.arc_count();
  DualResult r;
  r.m = RatMatrix(e.faces.size(), m);
  const RatMatrix n = network_matrix(d);
  for (std::size_t i = 0; i < e.faces.size(); ++i) {
    const Walk& face = e.faces[i];
    // Facial walks may pass a cut vertex twice; conservation is enforced step
    // by step, so the inner flow of the whole walk is still a flow.
    RatVector f = inner_flow(d, face, Rat(face.steps[0].dir));
    if (!is_zero(n * f)) throw std::logic_error("facial flow violates conservation");
    const Rat lead = abs(*std::find_if(f.begin(), f.end(), [](const Rat& v) { return sgn(v) != 0; }));
    for (Rat& v : f) v /= lead;
    for (std::size_t a = 0; a < m; ++a) r.m(i, a) = f[a];
  }

  std::vector<Arc> arcs = skeleton.arcs();
  r.sigma.resize(m);
  for (std::size_t a = 0; a < m; ++a) {
    const Rat& mu = r.m(arcs[a].head - 1, a);
    const Rat& nu = r.m(arcs[a].tail - 1, a);
    if (sgn(mu) <= 0 || sgn(nu) >= 0) throw std::logic_error("facial flow has the wrong sign pattern");
    r.sigma[a] = 1 / mu;
    arcs[a].lambda = -nu / mu;
  }
  r.dual = ArcParamDigraph(e.faces.size(), std::move(arcs));

  if (rank(r.m) + rank(n) != m) throw std::logic_error("facial flows do not span the flow space");
  if (r.m * RatMatrix::diagonal(r.sigma) != network_matrix(r.dual)) {
    throw std::logic_error("dual network matrix mismatch");
  }
  return r;
}

RatVector flow_to_bond(const PlanarEmbedding& e, const DualResult& r, const RatVector& f) {
  if (f.size() != r.sigma.size()) throw PreconditionError("flow has wrong length");
  if (!is_zero(network_matrix(e.base) * f)) throw PreconditionError(to_string(f) + " is not a flow");
  RatVector x(f.size());
  for (std::size_t a = 0; a < f.size(); ++a) x[a] = r.sigma[a] * f[a];
  return x;
}

RatVector bond_to_flow(const DualResult& r, const RatVector& x) {
  if (x.size() != r.sigma.size()) throw PreconditionError("bond has wrong length");
  if (!in_bond_space(r.dual, x)) throw PreconditionError(to_string(x) + " is not a bond of the dual");
  RatVector f(x.size());
  for (std::size_t a = 0; a < x.size(); ++a) f[a] = x[a] / r.sigma[a];
  return f;
}

namespace {

RatVector scaled(const RatVector& sigma, const RatVector& v) {
  RatVector out(v.size());
  for (std::size_t a = 0; a < v.size(); ++a) out[a] = sigma[a] * v[a];
  return out;
}

}  // namespace

PlanarFlowLattice::PlanarFlowLattice(PlanarEmbedding e, RatVector c)
    : embedding_(std::move(e)), c_(std::move(c)), dual_(dualize_flow_space(embedding_)) {
  if (c_.size() != embedding_.base.arc_count()) throw PreconditionError("capacities need one entry per arc");
  reduced_ = reduce(BondSystem(dual_.dual, scaled(dual_.sigma, c_)));
}

bool PlanarFlowLattice::is_feasible(const RatVector& f) const {
  return f.size() == c_.size() && dominated_by(f, c_) && is_zero(network_matrix(embedding_.base) * f);
}

RatVector PlanarFlowLattice::join(const RatVector& f, const RatVector& g) const {
  if (!is_feasible(f)) throw PreconditionError(to_string(f) + " is not a feasible flow");
  if (!is_feasible(g)) throw PreconditionError(to_string(g) + " is not a feasible flow");
  return bond_to_flow(dual_, bond_join(reduced_, scaled(dual_.sigma, f), scaled(dual_.sigma, g)));
}

RatVector PlanarFlowLattice::meet(const RatVector& f, const RatVector& g) const {
  if (!is_feasible(f)) throw PreconditionError(to_string(f) + " is not a feasible flow");
  if (!is_feasible(g)) throw PreconditionError(to_string(g) + " is not a feasible flow");
  return bond_to_flow(dual_, bond_meet(reduced_, scaled(dual_.sigma, f), scaled(dual_.sigma, g)));
}

RatVector flow_join(const PlanarEmbedding& e, const RatVector& c, const RatVector& f, const RatVector& g) {
  return PlanarFlowLattice(e, c).join(f, g);
}

RatVector flow_meet(const PlanarEmbedding& e, const RatVector& c, const RatVector& f, const RatVector& g) {
  return PlanarFlowLattice(e, c).meet(f, g);
}

ArcParamDigraph breakeven_parameterization(const ArcParamDigraph& skeleton, const RatVector& mu) {
  if (mu.size() != skeleton.vertex_count()) throw PreconditionError("need one multiplier per vertex");
  for (const Rat& v : mu) {
    if (sgn(v) <= 0) throw PreconditionError("vertex multipliers must be positive");
  }
  std::vector<Arc> arcs = skeleton.arcs();
  for (Arc& a : arcs) a.lambda = mu[a.head - 1] / mu[a.tail - 1];
  return ArcParamDigraph(skeleton.vertex_count(), std::move(arcs));
}

}  // namespace dlat
