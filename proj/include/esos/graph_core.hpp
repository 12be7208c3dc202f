#ifndef ESOS_GRAPH_CORE_HPP
#define ESOS_GRAPH_CORE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "esos/errors.hpp"
#include "esos/graph.hpp"

namespace esos {

struct EdgeCounts {
  int inside = 0;    ///< edges with both ends in S
  int boundary = 0;  ///< edges with exactly one end in S
};

inline void require_in_range(const Graph& g, const VertexSet& s, const char* what) {
  if (!g.contains_all(s)) throw InputError(std::string(what) + " contains vertices outside the graph");
}

/// e(v, S): neighbours of v inside S.
inline int edges_to(const Graph& g, Vertex v, const VertexSet& s) {
  return (g.neighbors(v) & s).size();
}

inline EdgeCounts edge_counts(const Graph& g, const VertexSet& s) {
  require_in_range(g, s, "vertex set");
  int twice_inside = 0;
  int boundary = 0;
  const VertexSet outside = g.vertices() - s;
  s.for_each([&](Vertex v) {
    twice_inside += edges_to(g, v, s);
    boundary += edges_to(g, v, outside);
  });
  return {twice_inside / 2, boundary};
}

/// e(S1, S2) for disjoint S1, S2.
inline int edges_between(const Graph& g, const VertexSet& a, const VertexSet& b) {
  require_in_range(g, a, "first set");
  require_in_range(g, b, "second set");
  if (a.intersects(b)) throw InputError("edges_between: sets overlap");
  int total = 0;
  a.for_each([&](Vertex v) { total += edges_to(g, v, b); });
  return total;
}

/// 2 e(G) > (k-1) n.
inline bool satisfies_density(const Graph& g, int k) {
  return 2LL * g.edge_count() > static_cast<long long>(k - 1) * g.order();
}

inline constexpr int kLocalConditionCap = 24;

/// Scans every nonempty S for 2(e(S)+d(S)) <= (k-1)|S|. Returns a violating S, or
/// nullopt when the local condition holds for all S.
///
/// e(S)+d(S) is the number of edges touching S. Subsets are visited in Gray-code
/// order so each step updates that count in O(1) from the toggled vertex.
inline std::optional<VertexSet> satisfies_local_condition(const Graph& g, int k,
                                                          int cap = kLocalConditionCap) {
  const int n = g.order();
  if (n > cap || n > 30) {
    throw CapabilityError("local condition scan capped at n <= " + std::to_string(cap));
  }
  std::vector<std::uint32_t> nbr(static_cast<std::size_t>(n));
  std::vector<int> deg(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    nbr[v] = static_cast<std::uint32_t>(g.neighbors(v).word(0));
    deg[v] = g.degree(v);
  }
  std::uint32_t set = 0;
  long long touching = 0;
  const long long slope = k - 1;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < total; ++i) {
    const int v = std::countr_zero(i);
    const std::uint32_t bit = std::uint32_t{1} << v;
    if (set & bit) {
      set &= ~bit;
      touching -= deg[v] - std::popcount(nbr[v] & set);
    } else {
      touching += deg[v] - std::popcount(nbr[v] & set);
      set |= bit;
    }
    if (2 * touching <= slope * std::popcount(set)) {
      VertexSet witness;
      for (int b = 0; b < n; ++b)
        if (set & (std::uint32_t{1} << b)) witness.insert(b);
      return witness;
    }
  }
  return std::nullopt;
}

/// A vertex of S maximising 2d(v) - e(v,S) (smallest id on ties), provided that
/// maximum reaches k; nullopt otherwise.
inline std::optional<Vertex> heavy_vertex(const Graph& g, const VertexSet& s, int k) {
  require_in_range(g, s, "vertex set");
  if (s.empty()) throw InputError("heavy_vertex: empty set");
  Vertex best = -1;
  int best_score = 0;
  s.for_each([&](Vertex v) {
    const int score = 2 * g.degree(v) - edges_to(g, v, s);
    if (best < 0 || score > best_score) {
      best = v;
      best_score = score;
    }
  });
  if (best_score < k) return std::nullopt;
  return best;
}

// ---------------------------------------------------------------------------
// H(a,b) certificates

/// (X, Y) with X, Y disjoint and N(v) restricted to X u Y equal to Y for every v in X.
struct HCertificate {
  VertexSet x;
  VertexSet y;

  int a() const { return x.size(); }
  int b() const { return y.size(); }
  VertexSet support() const { return x | y; }

  friend bool operator==(const HCertificate&, const HCertificate&) = default;
};

/// Checks the certificate on the induced subgraph G[X u Y].
inline bool verify_H_certificate(const Graph& g, const HCertificate& c) {
  if (!g.contains_all(c.x) || !g.contains_all(c.y)) return false;
  if (c.x.intersects(c.y)) return false;
  const VertexSet support = c.support();
  bool ok = true;
  c.x.for_each([&](Vertex v) {
    if ((g.neighbors(v) & support) != c.y) ok = false;
  });
  return ok;
}

/// Every partition of `within` into (X, Y) with G[within] in H(|X|, |Y|), X nonempty.
/// A valid X is determined by any of its members v: X = within \ N(v).
inline std::vector<HCertificate> H_partitions(const Graph& g, const VertexSet& within) {
  std::vector<HCertificate> out;
  within.for_each([&](Vertex v) {
    HCertificate c;
    c.y = g.neighbors(v) & within;
    c.x = within - c.y;
    if (c.x.first() != v) return;  // report each partition once, from its smallest X member
    if (verify_H_certificate(g, c)) out.push_back(c);
  });
  return out;
}

/// Whole-graph recognition: the valid partition with the largest X (ties: smallest
/// leading X vertex), or nullopt if G is in no H(a,b) with a >= 1.
inline std::optional<HCertificate> recognize_H(const Graph& g) {
  std::optional<HCertificate> best;
  for (const auto& c : H_partitions(g, g.vertices())) {
    if (!best || c.a() > best->a()) best = c;
  }
  return best;
}

/// A valid partition of exactly `within` with |X| = a, |Y| = b.
inline std::optional<HCertificate> find_H_partition(const Graph& g, const VertexSet& within, int a,
                                                    int b) {
  for (const auto& c : H_partitions(g, within)) {
    if (c.a() == a && c.b() == b) return c;
  }
  return std::nullopt;
}

namespace detail {

/// Extends `chosen` to an independent set of `need` more vertices from `pool`
/// (taken in increasing order).
inline bool pick_independent(const Graph& g, VertexSet pool, int need, VertexSet& chosen,
                             Budget& budget) {
  if (need == 0) return true;
  if (pool.size() < need) return false;
  while (!pool.empty()) {
    budget.tick();
    const Vertex v = pool.first();
    pool.erase(v);
    chosen.insert(v);
    if (pick_independent(g, pool - g.neighbors(v), need - 1, chosen, budget)) return true;
    chosen.erase(v);
    if (pool.size() < need) return false;
  }
  return false;
}

template <class F>
bool for_each_subset(const std::vector<Vertex>& items, int size, std::size_t from, VertexSet& acc,
                     Budget& budget, F&& f) {
  if (size == 0) return f(acc);
  for (std::size_t i = from; i + static_cast<std::size_t>(size) <= items.size(); ++i) {
    budget.tick();
    acc.insert(items[i]);
    if (for_each_subset(items, size - 1, i + 1, acc, budget, f)) return true;
    acc.erase(items[i]);
  }
  return false;
}

}  // namespace detail

/// Induced H(a,b)-subgraph of G whose vertex set contains u.
///
/// Y is drawn from neighbourhoods: from N(u) when u is placed in X, otherwise
/// {u} plus a subset of N(x0) for some neighbour x0 of u that joins X. X is then an
/// independent set among the common neighbours of Y.
inline std::optional<HCertificate> find_H_subgraph(const Graph& g, int a, int b, Vertex u,
                                                   std::uint64_t budget_limit = 10'000'000) {
  if (!g.has_vertex(u)) throw InputError("find_H_subgraph: vertex out of range");
  if (a < 1 || b < 0) throw InputError("find_H_subgraph: need a >= 1 and b >= 0");
  if (a + b > g.order()) return std::nullopt;
  Budget budget(budget_limit, "find_H_subgraph");
  std::optional<HCertificate> found;

  auto common_neighbours = [&](const VertexSet& y) {
    VertexSet c = g.vertices();
    y.for_each([&](Vertex t) { c &= g.neighbors(t); });
    return c - y;
  };

  // u in X.
  {
    VertexSet acc;
    const auto pool = g.neighbors(u).to_vector();
    detail::for_each_subset(pool, b, 0, acc, budget, [&](const VertexSet& y) {
      const VertexSet cands = common_neighbours(y);
      VertexSet chosen{u};
      if (detail::pick_independent(g, cands - g.neighbors(u) - VertexSet{u}, a - 1, chosen,
                                   budget)) {
        found = HCertificate{chosen, y};
        return true;
      }
      return false;
    });
  }
  if (found || b == 0) return found;

  // u in Y, with x0 a neighbour of u in X.
  for (Vertex x0 : g.neighbors(u).to_vector()) {
    VertexSet acc{u};
    const auto pool = (g.neighbors(x0) - VertexSet{u}).to_vector();
    detail::for_each_subset(pool, b - 1, 0, acc, budget, [&](const VertexSet& y) {
      const VertexSet cands = common_neighbours(y);
      if (!cands.contains(x0)) return false;
      VertexSet chosen{x0};
      if (detail::pick_independent(g, cands - g.neighbors(x0) - VertexSet{x0}, a - 1, chosen,
                                   budget)) {
        found = HCertificate{chosen, y};
        return true;
      }
      return false;
    });
    if (found) return found;
  }
  return std::nullopt;
}

}  // namespace esos

#endif  // ESOS_GRAPH_CORE_HPP
