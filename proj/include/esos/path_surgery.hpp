#ifndef ESOS_PATH_SURGERY_HPP
#define ESOS_PATH_SURGERY_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <vector>

#include "esos/errors.hpp"
#include "esos/graph.hpp"
#include "esos/graph_core.hpp"

namespace esos {

/// A path v0 v1 ... vp read from its anchor v0; the end is vp.
class UPath {
 public:
  UPath() = default;
  explicit UPath(std::vector<Vertex> seq) : seq_(std::move(seq)) {
    if (seq_.empty()) throw InputError("a path needs at least its anchor");
  }
  static UPath trivial(Vertex u) { return UPath(std::vector<Vertex>{u}); }

  Vertex anchor() const { return seq_.front(); }
  Vertex end() const { return seq_.back(); }
  int length() const { return static_cast<int>(seq_.size()) - 1; }
  Vertex at(int i) const { return seq_[static_cast<std::size_t>(i)]; }
  const std::vector<Vertex>& sequence() const { return seq_; }

  VertexSet vertex_set() const { return VertexSet::from(seq_); }
  /// V(P - anchor).
  VertexSet inner() const {
    VertexSet s = vertex_set();
    s.erase(anchor());
    return s;
  }
  bool contains(Vertex v) const { return std::find(seq_.begin(), seq_.end(), v) != seq_.end(); }

  UPath without_end() const {
    if (length() < 1) throw InputError("cannot drop the end of a trivial path");
    return UPath(std::vector<Vertex>(seq_.begin(), seq_.end() - 1));
  }
  UPath extended(Vertex v) const {
    auto s = seq_;
    s.push_back(v);
    return UPath(std::move(s));
  }
  UPath truncated(int len) const {
    return UPath(std::vector<Vertex>(seq_.begin(), seq_.begin() + len + 1));
  }
  UPath reversed() const { return UPath(std::vector<Vertex>(seq_.rbegin(), seq_.rend())); }

  friend bool operator==(const UPath&, const UPath&) = default;
  friend auto operator<=>(const UPath&, const UPath&) = default;

 private:
  std::vector<Vertex> seq_;
};

/// Vertices distinct, inside the graph, consecutive ones adjacent.
inline bool is_valid_upath(const Graph& g, const UPath& p) {
  const auto& s = p.sequence();
  if (s.empty()) return false;
  VertexSet seen;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!g.has_vertex(s[i]) || seen.contains(s[i])) return false;
    seen.insert(s[i]);
    if (i > 0 && !g.adjacent(s[i - 1], s[i])) return false;
  }
  return true;
}

/// Vertices reachable from `from` inside G[allowed] (from itself included when allowed).
inline VertexSet reachable(const Graph& g, Vertex from, const VertexSet& allowed) {
  VertexSet seen{from};
  VertexSet frontier{from};
  while (!frontier.empty()) {
    VertexSet next;
    frontier.for_each([&](Vertex v) { next |= g.neighbors(v); });
    next &= allowed;
    next -= seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

namespace detail {

template <class F>
bool upath_dfs(const Graph& g, std::vector<Vertex>& seq, VertexSet& used, const VertexSet& allowed,
               int length, F& f, Budget* budget) {
  if (budget) budget->tick();
  if (static_cast<int>(seq.size()) - 1 == length) return f(seq);
  const VertexSet next = g.neighbors(seq.back()) & (allowed - used);
  bool stop = false;
  next.for_each([&](Vertex w) {
    if (stop) return;
    seq.push_back(w);
    used.insert(w);
    stop = upath_dfs(g, seq, used, allowed, length, f, budget);
    used.erase(w);
    seq.pop_back();
  });
  return stop;
}

}  // namespace detail

/// Calls f(sequence) for every u-path with exactly `length` edges in G[allowed], in
/// lexicographic order of vertex sequences. f returns true to stop; the return value
/// reports whether it did.
template <class F>
bool for_each_upath(const Graph& g, Vertex u, const VertexSet& allowed, int length, F&& f,
                    Budget* budget = nullptr) {
  if (!allowed.contains(u) || length < 0) return false;
  std::vector<Vertex> seq{u};
  VertexSet used{u};
  return detail::upath_dfs(g, seq, used, allowed, length, f, budget);
}

/// First u-path (lexicographic) with exactly `length` edges in G[allowed], if any.
/// Prunes branches whose reachable remainder is too small.
inline std::optional<UPath> find_upath(const Graph& g, Vertex u, const VertexSet& allowed, int length,
                                       Budget* budget = nullptr) {
  if (!allowed.contains(u) || length < 0) return std::nullopt;
  if (reachable(g, u, allowed).size() < length + 1) return std::nullopt;
  std::vector<Vertex> seq{u};
  VertexSet used{u};
  std::optional<UPath> found;
  auto rec = [&](auto&& self) -> bool {
    if (budget) budget->tick();
    const int have = static_cast<int>(seq.size()) - 1;
    if (have == length) {
      found = UPath(seq);
      return true;
    }
    const VertexSet rest = allowed - used;
    if (reachable(g, seq.back(), rest).size() - 1 < length - have) return false;
    const VertexSet next = g.neighbors(seq.back()) & rest;
    for (Vertex w : next.to_vector()) {
      seq.push_back(w);
      used.insert(w);
      const bool done = self(self);
      used.erase(w);
      seq.pop_back();
      if (done) return true;
    }
    return false;
  };
  rec(rec);
  return found;
}

inline constexpr int kHamiltonianCap = 20;

/// Ends of Hamiltonian paths of G[within] that start at `start` (start itself
/// when within = {start}). Subset DP over at most 20 vertices.
inline VertexSet hamiltonian_ends(const Graph& g, const VertexSet& within, Vertex start) {
  if (!within.contains(start)) throw InputError("hamiltonian_ends: start outside the vertex set");
  const std::vector<Vertex> ids = within.to_vector();
  const int m = static_cast<int>(ids.size());
  if (m > kHamiltonianCap) {
    throw CapabilityError("Hamiltonian path DP capped at " + std::to_string(kHamiltonianCap) +
                          " vertices");
  }
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(m), 0);
  int s = 0;
  for (int i = 0; i < m; ++i) {
    if (ids[i] == start) s = i;
    for (int j = 0; j < m; ++j)
      if (g.adjacent(ids[i], ids[j])) adj[i] |= std::uint32_t{1} << j;
  }
  const std::uint32_t full = (std::uint32_t{1} << m) - 1;
  std::vector<std::uint32_t> ends(std::size_t{1} << m, 0);
  ends[std::uint32_t{1} << s] = std::uint32_t{1} << s;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    std::uint32_t e = ends[mask];
    while (e) {
      const int v = std::countr_zero(e);
      e &= e - 1;
      std::uint32_t ext = adj[v] & ~mask;
      while (ext) {
        const int w = std::countr_zero(ext);
        ext &= ext - 1;
        ends[mask | (std::uint32_t{1} << w)] |= std::uint32_t{1} << w;
      }
    }
    if (mask == full) break;
  }
  VertexSet out;
  for (int i = 0; i < m; ++i)
    if (ends[full] & (std::uint32_t{1} << i)) out.insert(ids[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Absorption

inline void require_off_path(const Graph& g, const UPath& p, Vertex v) {
  if (!g.has_vertex(v)) throw InputError("vertex out of range");
  if (p.contains(v)) throw InputError("vertex " + std::to_string(v) + " lies on the path");
}

/// Least i with v adjacent to both v_i and v_{i+1}.
inline std::optional<int> is_strictly_absorbable(const Graph& g, const UPath& p, Vertex v) {
  require_off_path(g, p, v);
  for (int i = 0; i < p.length(); ++i) {
    if (g.adjacent(v, p.at(i)) && g.adjacent(v, p.at(i + 1))) return i;
  }
  return std::nullopt;
}

inline bool is_absorbable(const Graph& g, const UPath& p, Vertex v) {
  require_off_path(g, p, v);
  return g.adjacent(v, p.end()) || is_strictly_absorbable(g, p, v).has_value();
}

/// P (+) v: appended at the end when possible, otherwise inserted into the first
/// edge both of whose ends are neighbours of v.
inline UPath absorb(const Graph& g, const UPath& p, Vertex v) {
  require_off_path(g, p, v);
  if (g.adjacent(v, p.end())) return p.extended(v);
  if (auto i = is_strictly_absorbable(g, p, v)) {
    auto s = p.sequence();
    s.insert(s.begin() + *i + 1, v);
    return UPath(std::move(s));
  }
  throw PreconditionError("absorb: vertex " + std::to_string(v) + " is not absorbable");
}

// ---------------------------------------------------------------------------
// Reroutes and second ends

enum class RerouteMode { exact, rotation };

inline constexpr int kRerouteExactCap = 16;

/// Ends of reroutes of P (u-paths on V(P) anchored at u). Exact mode solves the
/// Hamiltonian problem; rotation mode closes P under single Posa rotations, which
/// is always a subset of the exact answer.
inline VertexSet reroute_ends(const Graph& g, const UPath& p, RerouteMode mode,
                              Budget* budget = nullptr) {
  if (mode == RerouteMode::exact) {
    if (p.length() + 1 > kRerouteExactCap) {
      throw CapabilityError("exact reroute set capped at " + std::to_string(kRerouteExactCap) +
                            " vertices");
    }
    return hamiltonian_ends(g, p.vertex_set(), p.anchor());
  }
  VertexSet ends{p.end()};
  std::set<std::vector<Vertex>> seen{p.sequence()};
  std::deque<std::vector<Vertex>> queue{p.sequence()};
  while (!queue.empty()) {
    if (budget) budget->tick();
    const std::vector<Vertex> cur = std::move(queue.front());
    queue.pop_front();
    const int len = static_cast<int>(cur.size()) - 1;
    for (int i = 0; i + 1 < len; ++i) {
      if (!g.adjacent(cur[len], cur[i])) continue;
      std::vector<Vertex> next(cur.begin(), cur.begin() + i + 1);
      next.insert(next.end(), cur.rbegin(), cur.rbegin() + (len - i));
      if (seen.insert(next).second) {
        ends.insert(next.back());
        queue.push_back(std::move(next));
      }
    }
  }
  return ends;
}

struct SecondEnds {
  VertexSet outside;  ///< w off P with G[V(P-v) + w] Hamiltonian from u to w
  VertexSet inside;   ///< w' on P-v with P-v rerouted to end at w'

  /// Preferred representative: an outside vertex when there is one.
  Vertex representative() const { return outside.empty() ? inside.first() : outside.first(); }
};

inline SecondEnds second_ends(const Graph& g, const UPath& p, const VertexSet& forbidden) {
  if (p.length() < 1) throw InputError("second_ends: path must have length >= 1");
  if (forbidden.intersects(p.vertex_set())) throw InputError("second_ends: forbidden set meets P");
  SecondEnds out;
  const UPath rest = p.without_end();
  out.inside = hamiltonian_ends(g, rest.vertex_set(), p.anchor());
  out.inside.for_each([&](Vertex y) { out.outside |= g.neighbors(y); });
  out.outside -= p.vertex_set();
  out.outside -= forbidden;
  return out;
}

inline constexpr int kLongestPathCap = 20;

/// Maximum-length u-path in G - avoid; among those, the lexicographically first.
inline UPath longest_u_path(const Graph& g, Vertex u, const VertexSet& avoid,
                            Budget* budget = nullptr) {
  if (!g.has_vertex(u)) throw InputError("longest_u_path: vertex out of range");
  if (avoid.contains(u)) throw InputError("longest_u_path: u is in the avoided set");
  const VertexSet allowed = g.vertices() - avoid;
  const VertexSet component = reachable(g, u, allowed);
  if (component.size() > kLongestPathCap) {
    throw CapabilityError("longest_u_path: component exceeds " + std::to_string(kLongestPathCap) +
                          " vertices");
  }
  const int ceiling = component.size() - 1;
  std::vector<Vertex> seq{u};
  std::vector<Vertex> best = seq;
  VertexSet used{u};
  auto rec = [&](auto&& self) -> bool {
    if (budget) budget->tick();
    const int have = static_cast<int>(seq.size()) - 1;
    if (have > static_cast<int>(best.size()) - 1) {
      best = seq;
      if (have == ceiling) return true;
    }
    const VertexSet rest = component - used;
    const int bound = have + reachable(g, seq.back(), rest).size() - 1;
    if (bound <= static_cast<int>(best.size()) - 1) return false;
    for (Vertex w : (g.neighbors(seq.back()) & rest).to_vector()) {
      seq.push_back(w);
      used.insert(w);
      const bool done = self(self);
      used.erase(w);
      seq.pop_back();
      if (done) return true;
    }
    return false;
  };
  rec(rec);
  return UPath(best);
}

// ---------------------------------------------------------------------------
// Degree bounds, as executable checks

/// Reroute-end bound: 2 e(v, V(P)) - e(v, S) <= p + 1 for all v in the exact reroute set S.
inline bool check_lemma1_bound(const Graph& g, const UPath& p) {
  const VertexSet vp = p.vertex_set();
  const VertexSet s = reroute_ends(g, p, RerouteMode::exact);
  bool ok = true;
  s.for_each([&](Vertex v) {
    if (2 * edges_to(g, v, vp) - edges_to(g, v, s) > p.length() + 1) ok = false;
  });
  return ok;
}

struct Lemma2Check {
  bool holds = true;
  /// The right side p+1-2q is negative, so no x with a neighbour on P-u can meet it.
  bool vacuous_by_contradiction = false;
  int lhs_doubled = 0;
  int rhs_doubled = 0;
};

/// 2 e(x, V(P-u)) <= p + 1 - 2q for P a longest u-path, Q a u-path avoiding P-u with
/// end x, and x having a neighbour on P-u.
inline Lemma2Check check_lemma2_bound_detailed(const Graph& g, const UPath& p, const UPath& q,
                                               Budget* budget = nullptr) {
  if (!is_valid_upath(g, p) || !is_valid_upath(g, q)) throw InputError("check_lemma2_bound: invalid path");
  const Vertex u = p.anchor();
  if (q.anchor() != u) throw InputError("check_lemma2_bound: P and Q must share the anchor");
  if (q.length() < 1) throw InputError("check_lemma2_bound: Q must have length >= 1");
  if (longest_u_path(g, u, VertexSet{}, budget).length() != p.length()) {
    throw InputError("check_lemma2_bound: P is not a longest u-path");
  }
  const VertexSet inner = p.inner();
  if (q.vertex_set().intersects(inner)) throw InputError("check_lemma2_bound: Q meets V(P-u)");
  const Vertex x = q.end();
  if (!g.neighbors(x).intersects(inner)) throw InputError("check_lemma2_bound: N(x) misses V(P-u)");
  Lemma2Check c;
  c.lhs_doubled = 2 * edges_to(g, x, inner);
  c.rhs_doubled = p.length() + 1 - 2 * q.length();
  c.vacuous_by_contradiction = c.rhs_doubled < 0;
  c.holds = c.lhs_doubled <= c.rhs_doubled;
  return c;
}

inline bool check_lemma2_bound(const Graph& g, const UPath& p, const UPath& q) {
  return check_lemma2_bound_detailed(g, p, q).holds;
}

/// Not absorbable => 2e(v,V(P)) <= p+1; not strictly absorbable => 2e(v,V(P)) <= p+2.
inline bool check_observation1(const Graph& g, const UPath& p, Vertex v) {
  require_off_path(g, p, v);
  const int twice = 2 * edges_to(g, v, p.vertex_set());
  if (!is_absorbable(g, p, v) && twice > p.length() + 1) return false;
  if (!is_strictly_absorbable(g, p, v) && twice > p.length() + 2) return false;
  return true;
}

}  // namespace esos

#endif  // ESOS_PATH_SURGERY_HPP
