#include "dlat/dspace.hpp"

#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>

#include "dlat/errors.hpp"
#include "dlat/linalg.hpp"

namespace dlat {

namespace {

std::uint64_t support_mask(const RatVector& v) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) != 0) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

void normalize_leading_entry(RatVector& v) {
  for (const Rat& x : v) {
    if (sgn(x) != 0) {
      const Rat inv = 1 / x;
      for (Rat& y : v) y *= inv;
      return;
    }
  }
}

// Next integer with the same popcount (Gosper's hack).
std::uint64_t next_combination(std::uint64_t x) {
  const std::uint64_t c = x & (~x + 1);
  const std::uint64_t r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

}  // namespace

bool is_nnd(const std::vector<RatVector>& vectors) {
  std::vector<bool> covered;
  for (const RatVector& v : vectors) {
    if (!is_nonnegative(v)) return false;
    if (covered.empty()) covered.assign(v.size(), false);
    if (v.size() != covered.size()) throw std::invalid_argument("is_nnd: vectors of different length");
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (sgn(v[i]) == 0) continue;
      if (covered[i]) return false;
      covered[i] = true;
    }
  }
  return true;
}

std::vector<RatVector> support_minimal_vectors(const std::vector<RatVector>& directions,
                                               std::size_t dimension, std::size_t cap) {
  if (dimension > cap || dimension >= 64) {
    throw CapacityError("ambient dimension " + std::to_string(dimension) +
                        " exceeds the enumeration cap " + std::to_string(cap));
  }
  for (const RatVector& v : directions) {
    if (v.size() != dimension) throw std::invalid_argument("direction of wrong length");
  }
  // Row basis of the span.
  const RowEchelon ech = row_reduce(RatMatrix::from_rows(directions, dimension));
  const std::size_t k = ech.pivot_columns.size();
  if (k == 0) return {};
  RatMatrix basis(k, dimension);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < dimension; ++c) basis(r, c) = ech.reduced(r, c);

  std::vector<RatVector> found;
  std::vector<std::uint64_t> found_masks;
  const std::uint64_t full = dimension == 0 ? 0 : (std::uint64_t{1} << dimension) - 1;
  for (std::size_t size = 1; size <= dimension; ++size) {
    for (std::uint64_t s = (std::uint64_t{1} << size) - 1; s <= full; s = next_combination(s)) {
      bool contains_found = false;
      for (std::uint64_t m : found_masks) {
        if ((s & m) == m) {
          contains_found = true;
          break;
        }
      }
      if (!contains_found) {
        // Coefficients c with (c^T basis)_i = 0 for every i outside s.
        std::vector<std::size_t> outside;
        for (std::size_t i = 0; i < dimension; ++i) {
          if (!(s >> i & 1)) outside.push_back(i);
        }
        const auto coeffs = kernel_basis(basis.select_columns(outside).transposed());
        if (!coeffs.empty()) {
          RatVector x = zeros(dimension);
          for (std::size_t r = 0; r < k; ++r) {
            if (sgn(coeffs[0][r]) == 0) continue;
            for (std::size_t c = 0; c < dimension; ++c) x[c] += coeffs[0][r] * basis(r, c);
          }
          normalize_leading_entry(x);
          found_masks.push_back(support_mask(x));
          found.push_back(std::move(x));
        }
      }
      if (s == full) break;
    }
  }
  return found;
}

NNDResult nnd_basis(const AffineSubspace& s, std::size_t cap) {
  const std::size_t n = !s.offset.empty()       ? s.offset.size()
                        : !s.directions.empty() ? s.directions.front().size()
                                                : 0;
  const std::size_t k = rank(RatMatrix::from_rows(s.directions, n));
  NNDBasis result{n, {}};
  if (k == 0) return result;

  const std::vector<RatVector> circuits = support_minimal_vectors(s.directions, n, cap);
  std::uint64_t used = 0;
  for (const RatVector& x : circuits) {
    const std::uint64_t mask = support_mask(x);
    if (is_nonnegative(x) && (mask & used) == 0) {
      used |= mask;
      result.vectors.push_back(x);
    }
  }
  if (result.vectors.size() == k) return result;

  // Not distributive. A mixed-sign circuit x gives max(x, 0) = x^+ with a
  // strictly smaller support; two overlapping nonnegative circuits give a
  // min with smaller support. Either way a pair among +-circuits and 0
  // refutes closure.
  std::vector<RatVector> candidates;
  for (const RatVector& x : circuits) {
    candidates.push_back(x);
    candidates.push_back(-x);
  }
  candidates.push_back(zeros(n));
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      if (!in_span(s.directions, componentwise_max(candidates[i], candidates[j]))) {
        return NotDistributive{candidates[i], candidates[j]};
      }
    }
  }
  throw std::logic_error("nnd_basis: greedy selection failed but no refuting pair exists");
}

ArcParamDigraph netmatrix_from_nnd(const NNDBasis& basis) {
  if (!is_nnd(basis.vectors)) throw PreconditionError("basis is not nonnegative-disjoint");
  const std::size_t n = basis.dimension;
  std::vector<bool> covered(n + 1, false);
  std::vector<Arc> arcs;
  for (const RatVector& b : basis.vectors) {
    if (b.size() != n) throw PreconditionError("basis vector of wrong length");
    std::size_t prev = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(b[i]) == 0) continue;
      covered[i + 1] = true;
      if (prev != 0) arcs.push_back({prev, i + 1, Rat(b[i] / b[prev - 1])});
      prev = i + 1;
    }
    if (prev == 0) throw PreconditionError("basis contains the zero vector");
  }
  for (std::size_t v = 1; v <= n; ++v) {
    if (!covered[v]) arcs.push_back({v, v, Rat(0)});
  }
  return ArcParamDigraph(n, std::move(arcs));
}

NNDBasis potential_kernel_basis(const ArcParamDigraph& d) {
  const std::size_t n = d.vertex_count();
  const auto labels = component_labels(d);
  std::vector<std::vector<std::size_t>> incident(n + 1);
  for (std::size_t a = 0; a < d.arc_count(); ++a) {
    const Arc& arc = d.arc(a);
    if (arc.is_loop()) continue;
    incident[arc.tail].push_back(a);
    incident[arc.head].push_back(a);
  }

  RatVector mu = zeros(n + 1);
  std::vector<bool> seen(n + 1, false);
  std::vector<std::size_t> roots;
  for (std::size_t root = 1; root <= n; ++root) {
    if (seen[root]) continue;
    roots.push_back(root);
    seen[root] = true;
    mu[root] = 1;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t a : incident[u]) {
        const Arc& arc = d.arc(a);
        const std::size_t w = arc.tail == u ? arc.head : arc.tail;
        if (seen[w]) continue;
        seen[w] = true;
        mu[w] = arc.tail == u ? Rat(mu[u] * arc.lambda) : Rat(mu[u] / arc.lambda);
        queue.push_back(w);
      }
    }
  }

  std::vector<bool> consistent(roots.size(), true);
  for (const Arc& arc : d.arcs()) {
    if (arc.lambda * mu[arc.tail] != mu[arc.head]) consistent[labels[arc.tail]] = false;
  }

  NNDBasis basis{n, {}};
  for (std::size_t c = 0; c < roots.size(); ++c) {
    if (!consistent[c]) continue;
    RatVector b = zeros(n);
    for (std::size_t v = 1; v <= n; ++v) {
      if (labels[v] == c) b[v - 1] = mu[v];
    }
    basis.vectors.push_back(std::move(b));
  }
  return basis;
}

NNDBasis kernel_nnd_basis(const ArcParamDigraph& d) {
  const std::size_t n = d.vertex_count();
  const auto labels = component_labels(d);
  const std::size_t components = component_count(d);
  std::vector<std::size_t> vertices(components, 0);
  std::vector<std::size_t> tree_arcs(components, 0);
  for (std::size_t v = 1; v <= n; ++v) ++vertices[labels[v]];
  for (const Arc& arc : d.arcs()) {
    if (!arc.is_loop()) ++tree_arcs[labels[arc.tail]];
  }
  for (std::size_t c = 0; c < components; ++c) {
    if (tree_arcs[c] + 1 != vertices[c]) {
      throw PreconditionError("underlying digraph has a cycle through a non-loop arc");
    }
  }
  return potential_kernel_basis(d);
}

}  // namespace dlat
