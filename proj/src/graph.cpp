#include "dlat/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "dlat/errors.hpp"

namespace dlat {

ArcParamDigraph::ArcParamDigraph(std::size_t vertex_count, std::vector<Arc> arcs)
    : n_(vertex_count), arcs_(std::move(arcs)) {
  for (std::size_t a = 0; a < arcs_.size(); ++a) {
    const Arc& arc = arcs_[a];
    const std::string where = "arc " + std::to_string(a);
    if (arc.tail < 1 || arc.tail > n_ || arc.head < 1 || arc.head > n_) {
      throw PreconditionError(where + ": endpoint outside 1.." + std::to_string(n_));
    }
    if (sgn(arc.lambda) < 0) throw PreconditionError(where + ": negative parameter");
    if (sgn(arc.lambda) == 0 && !arc.is_loop()) {
      throw PreconditionError(where + ": zero parameter on a non-loop arc");
    }
  }
}

// ---------------------------------------------------------------------------

SignedArcSet::SignedArcSet(std::size_t arc_count) : signs_(arc_count, 0) {}

SignedArcSet::SignedArcSet(std::vector<int> signs) : signs_(std::move(signs)) {
  for (int s : signs_) {
    if (s < -1 || s > 1) throw PreconditionError("sign entries must be -1, 0 or +1");
  }
}

SignedArcSet SignedArcSet::of(const RatVector& x) {
  SignedArcSet s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s.signs_[i] = sgn(x[i]);
  return s;
}

void SignedArcSet::set(std::size_t arc, int sign) {
  if (sign < -1 || sign > 1) throw PreconditionError("sign entries must be -1, 0 or +1");
  signs_.at(arc) = sign;
}

std::vector<std::size_t> SignedArcSet::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < signs_.size(); ++i) {
    if (signs_[i] != 0) out.push_back(i);
  }
  return out;
}

bool SignedArcSet::empty() const {
  return std::all_of(signs_.begin(), signs_.end(), [](int s) { return s == 0; });
}

SignedArcSet SignedArcSet::negated() const {
  SignedArcSet out = *this;
  for (int& s : out.signs_) s = -s;
  return out;
}

SignedArcSet SignedArcSet::canonical() const {
  for (int s : signs_) {
    if (s != 0) return s > 0 ? *this : negated();
  }
  return *this;
}

std::strong_ordering operator<=>(const SignedArcSet& a, const SignedArcSet& b) {
  if (auto c = a.support() <=> b.support(); c != 0) return c;
  return a.signs_ <=> b.signs_;
}

// ---------------------------------------------------------------------------

std::size_t step_source(const ArcParamDigraph& d, const WalkStep& step) {
  const Arc& a = d.arc(step.arc);
  return step.dir > 0 ? a.tail : a.head;
}

std::size_t step_target(const ArcParamDigraph& d, const WalkStep& step) {
  const Arc& a = d.arc(step.arc);
  return step.dir > 0 ? a.head : a.tail;
}

void check_walk(const ArcParamDigraph& d, const Walk& w) {
  if (w.empty()) throw PreconditionError("walk is empty");
  for (std::size_t i = 0; i < w.size(); ++i) {
    const WalkStep& s = w.steps[i];
    if (s.arc >= d.arc_count()) {
      throw PreconditionError("walk step " + std::to_string(i) + ": arc index out of range");
    }
    if (s.dir != 1 && s.dir != -1) {
      throw PreconditionError("walk step " + std::to_string(i) + ": direction must be +1 or -1");
    }
    if (i > 0 && step_target(d, w.steps[i - 1]) != step_source(d, s)) {
      throw PreconditionError("walk step " + std::to_string(i) +
                              " does not start where the previous step ends");
    }
  }
}

std::size_t walk_start(const ArcParamDigraph& d, const Walk& w) {
  check_walk(d, w);
  return step_source(d, w.steps.front());
}

std::size_t walk_end(const ArcParamDigraph& d, const Walk& w) {
  check_walk(d, w);
  return step_target(d, w.steps.back());
}

bool is_closed(const ArcParamDigraph& d, const Walk& w) { return walk_start(d, w) == walk_end(d, w); }

std::vector<std::size_t> walk_vertices(const ArcParamDigraph& d, const Walk& w) {
  check_walk(d, w);
  std::vector<std::size_t> out{step_source(d, w.steps.front())};
  for (const WalkStep& s : w.steps) out.push_back(step_target(d, s));
  return out;
}

Walk reversed(const Walk& w) {
  Walk out;
  for (auto it = w.steps.rbegin(); it != w.steps.rend(); ++it) out.steps.push_back({it->arc, -it->dir});
  return out;
}

Walk rotated_to(const ArcParamDigraph& d, const Walk& cycle, std::size_t vertex) {
  if (!is_closed(d, cycle)) throw PreconditionError("rotation needs a closed walk");
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (step_source(d, cycle.steps[i]) == vertex) {
      Walk out;
      for (std::size_t k = 0; k < cycle.size(); ++k) out.steps.push_back(cycle.steps[(i + k) % cycle.size()]);
      return out;
    }
  }
  throw PreconditionError("vertex " + std::to_string(vertex) + " is not on the cycle");
}

SignedArcSet signed_support(const ArcParamDigraph& d, const Walk& w) {
  check_walk(d, w);
  SignedArcSet s(d.arc_count());
  for (const WalkStep& step : w.steps) {
    if (s[step.arc] != 0) {
      throw PreconditionError("arc " + std::to_string(step.arc) + " occurs twice in the walk");
    }
    s.set(step.arc, step.dir);
  }
  return s;
}

RatMatrix network_matrix(const ArcParamDigraph& d) {
  RatMatrix n(d.vertex_count(), d.arc_count());
  for (std::size_t a = 0; a < d.arc_count(); ++a) {
    const Arc& arc = d.arc(a);
    n(arc.head - 1, a) += 1;
    n(arc.tail - 1, a) -= arc.lambda;
  }
  return n;
}

Rat multiplier(const ArcParamDigraph& d, const SignedArcSet& s) {
  if (s.size() != d.arc_count()) throw std::invalid_argument("signed set length differs from arc count");
  Rat product = 1;
  for (std::size_t a = 0; a < s.size(); ++a) {
    if (s[a] == 0) continue;
    const Rat& lambda = d.arc(a).lambda;
    if (s[a] > 0) {
      product *= lambda;
    } else {
      if (sgn(lambda) == 0) throw DomainError("cannot invert zero parameter of arc " + std::to_string(a));
      product /= lambda;
    }
  }
  return product;
}

Rat excess(const ArcParamDigraph& d, const RatVector& f, std::size_t v) {
  if (f.size() != d.arc_count()) throw std::invalid_argument("flow length differs from arc count");
  Rat total = 0;
  for (std::size_t a = 0; a < d.arc_count(); ++a) {
    const Arc& arc = d.arc(a);
    if (arc.head == v) total += f[a];
    if (arc.tail == v) total -= arc.lambda * f[a];
  }
  return total;
}

std::vector<std::size_t> component_labels(const ArcParamDigraph& d) {
  const std::size_t n = d.vertex_count();
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::size_t>> adj(n + 1);
  for (const Arc& a : d.arcs()) {
    adj[a.tail].push_back(a.head);
    adj[a.head].push_back(a.tail);
  }
  std::vector<std::size_t> label(n + 1, unset);
  label[0] = 0;
  std::size_t next = 0;
  for (std::size_t s = 1; s <= n; ++s) {
    if (label[s] != unset) continue;
    std::deque<std::size_t> queue{s};
    label[s] = next;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t w : adj[u]) {
        if (label[w] == unset) {
          label[w] = next;
          queue.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

std::size_t component_count(const ArcParamDigraph& d) {
  if (d.vertex_count() == 0) return 0;
  const auto labels = component_labels(d);
  return *std::max_element(labels.begin() + 1, labels.end()) + 1;
}

std::vector<std::size_t> bfs_spanning_tree(const ArcParamDigraph& d) {
  const std::size_t n = d.vertex_count();
  std::vector<std::vector<std::size_t>> incident(n + 1);
  for (std::size_t a = 0; a < d.arc_count(); ++a) {
    const Arc& arc = d.arc(a);
    if (arc.is_loop()) continue;
    incident[arc.tail].push_back(a);
    incident[arc.head].push_back(a);
  }
  std::vector<bool> seen(n + 1, false);
  std::vector<std::size_t> tree;
  for (std::size_t root = 1; root <= n; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t a : incident[u]) {
        const Arc& arc = d.arc(a);
        const std::size_t w = arc.tail == u ? arc.head : arc.tail;
        if (seen[w]) continue;
        seen[w] = true;
        tree.push_back(a);
        queue.push_back(w);
      }
    }
  }
  std::sort(tree.begin(), tree.end());
  return tree;
}

Walk fundamental_cycle(const ArcParamDigraph& d, const std::vector<std::size_t>& tree,
                       std::size_t arc) {
  if (std::find(tree.begin(), tree.end(), arc) != tree.end()) {
    throw PreconditionError("arc " + std::to_string(arc) + " belongs to the tree");
  }
  const Arc& closing = d.arc(arc);
  Walk cycle;
  cycle.steps.push_back({arc, 1});
  if (closing.is_loop()) return cycle;

  // Tree path from head back to tail.
  const std::size_t n = d.vertex_count();
  std::vector<std::vector<std::size_t>> incident(n + 1);
  for (std::size_t a : tree) {
    incident[d.arc(a).tail].push_back(a);
    incident[d.arc(a).head].push_back(a);
  }
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent_arc(n + 1, none);
  std::vector<bool> seen(n + 1, false);
  std::deque<std::size_t> queue{closing.head};
  seen[closing.head] = true;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t a : incident[u]) {
      const std::size_t w = d.arc(a).tail == u ? d.arc(a).head : d.arc(a).tail;
      if (seen[w]) continue;
      seen[w] = true;
      parent_arc[w] = a;
      queue.push_back(w);
    }
  }
  if (!seen[closing.tail]) throw PreconditionError("tree does not connect the ends of the arc");
  // Walk back from tail to head, then reverse to get head -> tail.
  std::vector<WalkStep> back;
  for (std::size_t v = closing.tail; v != closing.head;) {
    const std::size_t a = parent_arc[v];
    const Arc& ta = d.arc(a);
    const std::size_t prev = ta.tail == v ? ta.head : ta.tail;
    // Step prev -> v.
    back.push_back({a, ta.tail == prev ? 1 : -1});
    v = prev;
  }
  for (auto it = back.rbegin(); it != back.rend(); ++it) cycle.steps.push_back(*it);
  return cycle;
}

}  // namespace dlat
