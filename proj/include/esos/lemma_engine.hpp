#ifndef ESOS_LEMMA_ENGINE_HPP
#define ESOS_LEMMA_ENGINE_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "esos/errors.hpp"
#include "esos/graph.hpp"
#include "esos/graph_core.hpp"
#include "esos/path_surgery.hpp"

namespace esos {

/// The four extension statements, named after the vertices they talk about.
enum class LemmaId { xv1v2 = 3, xPQ = 4, xvw = 5, PQw = 6 };

inline constexpr LemmaId kAllLemmas[] = {LemmaId::xv1v2, LemmaId::xPQ, LemmaId::xvw, LemmaId::PQw};

inline std::string_view lemma_name(LemmaId id) {
  switch (id) {
    case LemmaId::xv1v2: return "xv1v2";
    case LemmaId::xPQ: return "xPQ";
    case LemmaId::xvw: return "xvw";
    case LemmaId::PQw: return "PQw";
  }
  return "?";
}

inline LemmaId lemma_from_number(int number) {
  for (LemmaId id : kAllLemmas)
    if (static_cast<int>(id) == number) return id;
  throw InputError("unknown lemma " + std::to_string(number) + " (expected 3, 4, 5 or 6)");
}

/// One configuration for an extension statement.
///
/// xv1v2: P in G-{w1,w2}, Q a u-path ending at x.
/// xPQ:   Q a plain path in G-u read from w1 to w2; x a further neighbour of u.
/// xvw:   vw an edge of G-u, P in G-{v,w}, Q a u-path ending at x.
/// PQw:   P in G-w (the chosen reroute), Q a u-path ending at x.
struct LemmaInstance {
  LemmaId lemma = LemmaId::xv1v2;
  Graph host;
  Vertex u = -1;
  UPath p;
  UPath q;
  Vertex x = -1;
  Vertex w1 = -1;
  Vertex w2 = -1;
  Vertex v = -1;
  Vertex w = -1;
  long long lambda_doubled = 0;
  std::uint64_t id = 0;

  VertexSet L() const { return p.inner(); }
  int p_len() const { return p.length(); }
  /// q as the statements use it: |V(Q)| for xPQ, the length of Q otherwise.
  int q_value() const { return lemma == LemmaId::xPQ ? q.length() + 1 : q.length(); }
};

enum class LemmaCase { A, B, C };

inline char case_letter(LemmaCase c) { return c == LemmaCase::A ? 'A' : c == LemmaCase::B ? 'B' : 'C'; }

struct CaseOutcome {
  LemmaCase tag = LemmaCase::A;
  long long lambda_doubled = 0;
  std::optional<HCertificate> certificate;
  /// xv1v2 / xPQ case B: the indices i with e(w_i, L) = p/2.
  std::vector<int> balanced;
  /// Case C: xv1v2 {P'}; xPQ {length p, length q+1}; xvw {P', R}; PQw {P'', R}.
  std::vector<UPath> paths;
  int index = 0;
  Vertex z = -1;
  /// Which reading of an ambiguous clause the witness satisfies.
  std::string reading;
  std::vector<std::string> facts;
};

// ---------------------------------------------------------------------------
// Derived quantities

/// {z in V(P) n N(w) : G - {w, z} has a u-path of length p}.
inline VertexSet xvw_S(const Graph& g, const UPath& p, Vertex w, Budget* budget = nullptr) {
  VertexSet s;
  (p.vertex_set() & g.neighbors(w)).for_each([&](Vertex z) {
    const VertexSet allowed = g.vertices() - VertexSet{w, z};
    if (find_upath(g, p.anchor(), allowed, p.length(), budget)) s.insert(z);
  });
  return s;
}

/// Twice the instance's lambda, recomputed from the graph.
inline long long compute_lambda_doubled(const LemmaInstance& in, Budget* budget = nullptr) {
  const Graph& g = in.host;
  const VertexSet l = in.L();
  const long long p = in.p_len();
  switch (in.lemma) {
    case LemmaId::xv1v2:
    case LemmaId::xPQ:
      return 2 * (2LL * edges_to(g, in.x, l) + edges_to(g, in.w1, l) + edges_to(g, in.w2, l) - 2 * p);
    case LemmaId::xvw: {
      const VertexSet s = xvw_S(g, in.p, in.w, budget);
      return 4LL * edges_to(g, in.x, l) + 2LL * (edges_to(g, in.v, l) + edges_to(g, in.w, l)) -
             4 * p - edges_to(g, in.v, s);
    }
    case LemmaId::PQw:
      return 2 * (static_cast<long long>(edges_to(g, in.x, l)) + edges_to(g, in.w, l) - p);
  }
  return 0;
}

namespace detail {

inline int inside_edges(const Graph& g, const std::vector<Vertex>& seq) {
  return edge_counts(g, VertexSet::from(seq)).inside;
}

/// Largest e(V(P')) over u-paths P' of the given length in G[allowed].
inline int max_path_edges(const Graph& g, Vertex u, const VertexSet& allowed, int length,
                          Budget& budget) {
  int best = -1;
  for_each_upath(
      g, u, allowed, length,
      [&](const std::vector<Vertex>& seq) {
        best = std::max(best, inside_edges(g, seq));
        return false;
      },
      &budget);
  return best;
}

/// Largest i with seq[i] adjacent to x, or -1.
inline int last_neighbor_index(const Graph& g, const std::vector<Vertex>& seq, Vertex x) {
  for (int i = static_cast<int>(seq.size()) - 1; i >= 0; --i)
    if (g.adjacent(x, seq[i])) return i;
  return -1;
}

inline int max_reroute_index(const Graph& g, const UPath& p, Vertex x, Budget& budget) {
  int best = -1;
  for_each_upath(
      g, p.anchor(), p.vertex_set(), p.length(),
      [&](const std::vector<Vertex>& seq) {
        best = std::max(best, last_neighbor_index(g, seq, x));
        return false;
      },
      &budget);
  return best;
}

/// x is adjacent to v_{i-1} for these v_i on P (v_0 = u), together with v_1..v_q.
inline VertexSet pqw_S2(const Graph& g, const UPath& p, Vertex x, int q) {
  VertexSet s;
  for (int i = 1; i <= p.length(); ++i) {
    if (g.adjacent(x, p.at(i - 1)) || i <= q) s.insert(p.at(i));
  }
  return s;
}

/// {v_i in L : i < p and v_{i+1} not adjacent to x}.
inline VertexSet pqw_literal_set(const Graph& g, const UPath& p, Vertex x) {
  VertexSet s;
  for (int i = 1; i < p.length(); ++i)
    if (!g.adjacent(x, p.at(i + 1))) s.insert(p.at(i));
  return s;
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

}  // namespace detail

/// Throws PreconditionError unless the instance meets its statement's hypotheses,
/// including maximality of e(V(P)) (checked exhaustively) and the declared lambda.
inline void check_hypotheses(const LemmaInstance& in, Budget* budget = nullptr) {
  using detail::require;
  Budget local(default_budget(), "lemma hypotheses");
  Budget& b = budget ? *budget : local;
  const Graph& g = in.host;
  require(g.has_vertex(in.u), "u out of range");
  require(in.p.length() >= 1 && is_valid_upath(g, in.p) && in.p.anchor() == in.u,
          "P must be a u-path of length >= 1");
  require(is_valid_upath(g, in.q), "Q must be a path of the host");
  const VertexSet vp = in.p.vertex_set();
  const VertexSet l = in.L();
  const VertexSet vq = in.q.vertex_set();
  VertexSet removed;

  switch (in.lemma) {
    case LemmaId::xv1v2:
      require(g.has_vertex(in.w1) && g.has_vertex(in.w2) && in.w1 != in.w2, "w1, w2 must be distinct");
      removed = VertexSet{in.w1, in.w2};
      require(!removed.contains(in.u), "u must differ from w1, w2");
      break;
    case LemmaId::xPQ:
      require(in.q.length() >= 1, "Q needs two distinct ends");
      require(in.q.anchor() == in.w1 && in.q.end() == in.w2, "Q must run from w1 to w2");
      require(!vq.contains(in.u), "Q must avoid u");
      removed = vq;
      break;
    case LemmaId::xvw:
      require(g.has_vertex(in.v) && g.has_vertex(in.w) && in.v != in.w && g.adjacent(in.v, in.w),
              "vw must be an edge");
      removed = VertexSet{in.v, in.w};
      require(!removed.contains(in.u), "the edge vw must avoid u");
      break;
    case LemmaId::PQw:
      require(g.has_vertex(in.w) && in.w != in.u, "w must be a vertex other than u");
      removed = VertexSet{in.w};
      break;
  }
  require(!vp.intersects(removed), "P meets the deleted vertices");

  if (in.lemma == LemmaId::xPQ) {
    require(g.has_vertex(in.x) && g.adjacent(in.u, in.x), "x must be a neighbour of u");
    require(!vp.contains(in.x) && !vq.contains(in.x), "x must lie off P and Q");
    require((l | vq).subset_of(g.neighbors(in.u)), "V(P u Q) - u must lie in N(u)");
  } else {
    require(in.q.anchor() == in.u && in.q.length() >= 1, "Q must be a u-path of length >= 1");
    require(in.q.end() == in.x, "x must be the end of Q");
    require(!vq.intersects(l | removed), "Q meets L or the deleted vertices");
  }

  const int best = detail::max_path_edges(g, in.u, g.vertices() - removed, in.p_len(), b);
  require(edge_counts(g, vp).inside == best, "e(V(P)) is not maximum");

  if (in.lemma == LemmaId::PQw) {
    require(detail::last_neighbor_index(g, in.p.sequence(), in.x) ==
                detail::max_reroute_index(g, in.p, in.x, b),
            "P does not maximise the last neighbour index of x over reroutes");
    require(is_absorbable(g, in.p, in.x), "x is not absorbable to P");
  }

  const long long lambda = compute_lambda_doubled(in, &b);
  require(lambda == in.lambda_doubled, "declared lambda " + std::to_string(in.lambda_doubled) +
                                           " differs from recomputed " + std::to_string(lambda));
  require(lambda >= 0, "lambda is negative");
}

// ---------------------------------------------------------------------------
// Witness searches (also used by the embedder to rearrange legs)

struct XV1V2Witness {
  int index = 0;
  Vertex z = -1;
  UPath path;
  std::string reading;
};

/// i in {1,2}, z in N(w_i) n V(P), and a u-path of length p avoiding z inside
/// V(P) + {x, w_(3-i)} ("literal"), or failing that inside V(P) u V(Q) + w_(3-i)
/// ("with_Q").
inline std::optional<XV1V2Witness> search_xv1v2(const Graph& g, const UPath& p, const UPath& q,
                                                Vertex w1, Vertex w2, Budget* budget = nullptr) {
  const Vertex ws[2] = {w1, w2};
  const VertexSet extras[2] = {VertexSet{q.end()}, q.vertex_set()};
  const char* readings[2] = {"literal", "with_Q"};
  for (int pass = 0; pass < 2; ++pass) {
    for (int i = 0; i < 2; ++i) {
      const VertexSet domain = p.vertex_set() | extras[pass] | VertexSet{ws[1 - i]};
      for (Vertex z : (g.neighbors(ws[i]) & p.inner()).to_vector()) {
        if (auto path = find_upath(g, p.anchor(), domain - VertexSet{z}, p.length(), budget)) {
          return XV1V2Witness{i + 1, z, *path, readings[pass]};
        }
      }
    }
  }
  return std::nullopt;
}

/// Two u-paths of lengths len1 and len2 sharing only u, inside G[allowed].
inline std::optional<std::pair<UPath, UPath>> search_disjoint_upaths(const Graph& g, Vertex u,
                                                                     const VertexSet& allowed,
                                                                     int len1, int len2,
                                                                     Budget* budget = nullptr) {
  const bool swap = len2 < len1;
  const int shorter = swap ? len2 : len1;
  const int longer = swap ? len1 : len2;
  if (allowed.size() < shorter + longer + 1) return std::nullopt;
  std::optional<std::pair<UPath, UPath>> found;
  for_each_upath(
      g, u, allowed, shorter,
      [&](const std::vector<Vertex>& seq) {
        UPath first(seq);
        auto second = find_upath(g, u, allowed - first.inner(), longer, budget);
        if (!second) return false;
        found = swap ? std::pair{*second, first} : std::pair{first, *second};
        return true;
      },
      budget);
  return found;
}

struct PathPair {
  UPath main;
  UPath r;
  std::string reading;
};

/// A path on three vertices containing w inside G[domain]: w at an end when
/// w_at_end, otherwise w anywhere. Lexicographically first.
inline std::optional<UPath> three_vertex_path_through(const Graph& g, Vertex w, const VertexSet& domain,
                                                      bool w_at_end) {
  if (!domain.contains(w)) return std::nullopt;
  const VertexSet rest = domain - VertexSet{w};
  for (Vertex a : (g.neighbors(w) & rest).to_vector()) {
    const VertexSet beyond = (g.neighbors(a) & rest) - VertexSet{a};
    if (!beyond.empty()) return UPath({w, a, beyond.first()});
    if (!w_at_end) {
      const VertexSet other = (g.neighbors(w) & rest) - VertexSet{a};
      if (!other.empty()) return UPath({a, w, other.first()});
    }
  }
  return std::nullopt;
}

/// xvw case (c): a u-path P' of length p and a path R on three vertices avoiding it,
/// with either w in V(R) inside V(P) + {v, w} and V(P') inside V(P) + x ("within"),
/// or R a w-path ("w_path"). P' stays inside V(P) + x whenever possible.
inline std::optional<PathPair> search_xvw(const Graph& g, const UPath& p, Vertex x, Vertex v, Vertex w,
                                          Budget* budget = nullptr) {
  std::optional<PathPair> found;
  const VertexSet near = p.vertex_set() | VertexSet{v, w};
  for_each_upath(
      g, p.anchor(), p.vertex_set() | VertexSet{x}, p.length(),
      [&](const std::vector<Vertex>& seq) {
        const VertexSet used = VertexSet::from(seq);
        if (auto r = three_vertex_path_through(g, w, near - used, false)) {
          found = PathPair{UPath(seq), *r, "within"};
          return true;
        }
        if (auto r = three_vertex_path_through(g, w, g.vertices() - used, true)) {
          found = PathPair{UPath(seq), *r, "w_path"};
          return true;
        }
        return false;
      },
      budget);
  if (found) return found;
  // R first, then P' anywhere else.
  const VertexSet all = g.vertices() - VertexSet{p.anchor()};
  for (Vertex a : (g.neighbors(w) & all).to_vector()) {
    for (Vertex c : ((g.neighbors(a) & all) - VertexSet{w}).to_vector()) {
      const UPath r({w, a, c});
      if (auto main = find_upath(g, p.anchor(), g.vertices() - r.vertex_set(), p.length(), budget))
        return PathPair{*main, r, "w_path"};
    }
  }
  return std::nullopt;
}

/// PQw case (c): a u-path P'' of length p and a w-path R avoiding it, with either
/// |V(R)| = 2 and V(P'') in V(P) + x, or |V(R)| = 3 and V(P'') in V(P) u V(Q).
inline std::optional<PathPair> search_PQw(const Graph& g, const UPath& p, const UPath& q, Vertex w,
                                          Budget* budget = nullptr) {
  std::optional<PathPair> found;
  const VertexSet small = p.vertex_set() | VertexSet{q.end()};
  for_each_upath(
      g, p.anchor(), p.vertex_set() | q.vertex_set(), p.length(),
      [&](const std::vector<Vertex>& seq) {
        const VertexSet used = VertexSet::from(seq);
        const VertexSet free = g.vertices() - used;
        if (used.subset_of(small)) {
          const VertexSet nb = g.neighbors(w) & free;
          if (!nb.empty()) {
            found = PathPair{UPath(seq), UPath({w, nb.first()}), "two_vertices"};
            return true;
          }
        }
        if (auto r = three_vertex_path_through(g, w, free, true)) {
          found = PathPair{UPath(seq), *r, "three_vertices"};
          return true;
        }
        return false;
      },
      budget);
  return found;
}

// ---------------------------------------------------------------------------
// Case verification, recomputed from the host alone

namespace detail {

inline bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

inline bool is_u_path_of(const Graph& g, const UPath& path, Vertex u, int length) {
  return is_valid_upath(g, path) && path.anchor() == u && path.length() == length;
}

inline bool balanced_H(const Graph& g, const HCertificate& c, const VertexSet& support, int p) {
  return p % 2 == 0 && verify_H_certificate(g, c) && c.support() == support && c.a() == p / 2 + 1 &&
         c.b() == p / 2 + 1;
}

/// Facts for case A, recomputed; empty optional when they do not hold.
inline std::optional<std::vector<std::string>> case_A_facts(const LemmaInstance& in, long long lambda) {
  const Graph& g = in.host;
  const VertexSet l = in.L();
  const int p = in.p_len();
  if (lambda != 0) return std::nullopt;
  std::vector<std::string> facts{"lambda=0"};
  switch (in.lemma) {
    case LemmaId::xv1v2:
      if (edges_to(g, in.w1, l) + edges_to(g, in.w2, l) != 0) return std::nullopt;
      facts.push_back("e({w1,w2},L)=0");
      return facts;
    case LemmaId::xPQ: {
      const int ex = edges_to(g, in.x, l);
      const int e1 = edges_to(g, in.w1, l);
      const int e2 = edges_to(g, in.w2, l);
      if (ex < e1 && e1 == e2) {
        facts.push_back("e(x,L)=" + std::to_string(ex) + "<e(w1,L)=e(w2,L)=" + std::to_string(e1));
      } else if (ex == p) {
        facts.push_back("e(x,L)=p");
      } else {
        return std::nullopt;
      }
      return facts;
    }
    case LemmaId::xvw:
      if (!l.subset_of(g.neighbors(in.x))) return std::nullopt;
      if ((g.neighbors(in.v) | g.neighbors(in.w)).intersects(l)) return std::nullopt;
      facts.push_back("L in N(x)");
      facts.push_back("N({v,w}) n L empty");
      return facts;
    case LemmaId::PQw: {
      if (!g.adjacent(in.x, in.p.end())) return std::nullopt;
      const VertexSet nw = g.neighbors(in.w) & l;
      if (nw != l - pqw_S2(g, in.p, in.x, in.q.length())) return std::nullopt;
      const bool none = nw.empty();
      const bool strict = is_strictly_absorbable(g, in.p, in.w).has_value();
      if (!none && !strict) return std::nullopt;
      facts.push_back("v_p in N(x)");
      facts.push_back("N(w) n L = L - S2");
      facts.push_back(nw == pqw_literal_set(g, in.p, in.x) ? "literal neighbourhood form holds"
                                                           : "literal neighbourhood form fails");
      facts.push_back(none ? "e(w,L)=0" : "w strictly absorbable");
      return facts;
    }
  }
  return std::nullopt;
}

inline std::vector<int> balanced_indices(const LemmaInstance& in) {
  std::vector<int> out;
  const VertexSet l = in.L();
  if (in.p_len() % 2 != 0) return out;
  if (edges_to(in.host, in.w1, l) * 2 == in.p_len()) out.push_back(1);
  if (edges_to(in.host, in.w2, l) * 2 == in.p_len()) out.push_back(2);
  return out;
}

}  // namespace detail

/// Recomputes every claim of the outcome from the host. Returns false (with a reason)
/// on the first claim that does not hold.
inline bool verify_case_outcome(const LemmaInstance& in, const CaseOutcome& out,
                                std::string* why = nullptr) {
  using detail::fail;
  const Graph& g = in.host;
  const VertexSet vp = in.p.vertex_set();
  const VertexSet l = in.L();
  const int p = in.p_len();
  const long long lambda = compute_lambda_doubled(in);
  if (lambda != out.lambda_doubled || lambda != in.lambda_doubled) return fail(why, "lambda mismatch");

  switch (out.tag) {
    case LemmaCase::A: {
      const auto facts = detail::case_A_facts(in, lambda);
      if (!facts) return fail(why, "case A facts do not hold");
      if (*facts != out.facts) return fail(why, "case A fact list differs from recomputation");
      return true;
    }
    case LemmaCase::B: {
      if (lambda != 0) return fail(why, "case B needs lambda=0");
      if (!out.certificate) return fail(why, "case B without certificate");
      const HCertificate& c = *out.certificate;
      const VertexSet base = vp | VertexSet{in.x};
      switch (in.lemma) {
        case LemmaId::xv1v2:
        case LemmaId::xPQ: {
          if (in.lemma == LemmaId::xv1v2 && in.q_value() != 1) return fail(why, "case B needs q=1");
          const auto bal = detail::balanced_indices(in);
          if (bal.empty() || bal != out.balanced) return fail(why, "balanced indices do not match");
          if (!detail::balanced_H(g, c, base, p)) return fail(why, "certificate is not H(p/2+1,p/2+1) on V(P)+x");
          return true;
        }
        case LemmaId::xvw: {
          if (in.q_value() != 1) return fail(why, "case B needs q=1");
          if (2 * edges_to(g, in.w, l) != p) return fail(why, "case B needs e(w,L)=p/2");
          const VertexSet big = base | VertexSet{in.v};
          if (!c.support().subset_of(big) || c.support().size() != p + 2 ||
              !detail::balanced_H(g, c, c.support(), p)) {
            return fail(why, "certificate is not H(p/2+1,p/2+1) inside V(P)+{x,v}");
          }
          const std::string reading = c.support() == base ? "V(P)+x" : "V(P)+{x,v} minus one";
          if (reading != out.reading) return fail(why, "certificate reading label mismatch");
          return true;
        }
        case LemmaId::PQw:
          if (in.q_value() != 1) return fail(why, "case B needs q=1");
          if (2 * edges_to(g, in.w, l) != p) return fail(why, "case B needs e(w,L)=p/2");
          if (!detail::balanced_H(g, c, base, p)) return fail(why, "certificate is not H(p/2+1,p/2+1) on V(P)+x");
          return true;
      }
      return fail(why, "unknown lemma");
    }
    case LemmaCase::C: {
      switch (in.lemma) {
        case LemmaId::xv1v2: {
          if (out.paths.size() != 1 || (out.index != 1 && out.index != 2)) return fail(why, "malformed case C");
          const Vertex wi = out.index == 1 ? in.w1 : in.w2;
          const Vertex wo = out.index == 1 ? in.w2 : in.w1;
          if (!vp.contains(out.z) || !g.adjacent(wi, out.z)) return fail(why, "z not in N(w_i) n V(P)");
          const UPath& path = out.paths[0];
          if (!is_valid_upath(g, path) || path.anchor() != in.u || path.length() < p)
            return fail(why, "P' is not a u-path of length >= p");
          const VertexSet vs = path.vertex_set();
          std::string reading;
          if (vs.subset_of((vp | VertexSet{in.x, wo}) - VertexSet{out.z})) reading = "literal";
          else if (vs.subset_of((vp | in.q.vertex_set() | VertexSet{wo}) - VertexSet{out.z})) reading = "with_Q";
          else return fail(why, "P' leaves V(P) u V(Q) + w_(3-i) - z");
          if (reading != out.reading) return fail(why, "P' reading label mismatch");
          return true;
        }
        case LemmaId::xPQ: {
          if (out.paths.size() != 2) return fail(why, "malformed case C");
          const UPath& a = out.paths[0];
          const UPath& b = out.paths[1];
          if (!detail::is_u_path_of(g, a, in.u, p) || !detail::is_u_path_of(g, b, in.u, in.q_value() + 1))
            return fail(why, "paths do not have lengths p and q+1");
          if (a.inner().intersects(b.inner())) return fail(why, "paths are not disjoint");
          return true;
        }
        case LemmaId::xvw: {
          if (out.paths.size() != 2) return fail(why, "malformed case C");
          const UPath& main = out.paths[0];
          const UPath& r = out.paths[1];
          if (!detail::is_u_path_of(g, main, in.u, p)) return fail(why, "P' is not a u-path of length p");
          if (!is_valid_upath(g, r) || r.length() != 2) return fail(why, "R is not a path of length 2");
          if (r.vertex_set().intersects(main.vertex_set())) return fail(why, "R meets P'");
          const bool w_path = r.anchor() == in.w || r.end() == in.w;
          const bool within = r.contains(in.w) && r.vertex_set().subset_of(vp | VertexSet{in.v, in.w}) &&
                              main.vertex_set().subset_of(vp | VertexSet{in.x});
          if (!w_path && !within) return fail(why, "R satisfies neither reading");
          const std::string reading = within ? "within" : "w_path";
          if (reading != out.reading) return fail(why, "R reading label mismatch");
          return true;
        }
        case LemmaId::PQw: {
          if (out.paths.size() != 2) return fail(why, "malformed case C");
          const UPath& main = out.paths[0];
          const UPath& r = out.paths[1];
          if (!detail::is_u_path_of(g, main, in.u, p)) return fail(why, "P'' is not a u-path of length p");
          if (!is_valid_upath(g, r) || r.anchor() != in.w) return fail(why, "R is not a w-path");
          if (r.vertex_set().intersects(main.vertex_set())) return fail(why, "R meets P''");
          const VertexSet inside = main.vertex_set();
          if (r.length() == 1 && inside.subset_of(vp | VertexSet{in.x})) {
            if (out.reading != "two_vertices") return fail(why, "R reading label mismatch");
            return true;
          }
          if (r.length() == 2 && inside.subset_of(vp | in.q.vertex_set())) {
            if (out.reading != "three_vertices") return fail(why, "R reading label mismatch");
            return true;
          }
          return fail(why, "P'' and R fit neither variant");
        }
      }
      return fail(why, "unknown lemma");
    }
  }
  return fail(why, "unknown case");
}

// ---------------------------------------------------------------------------
// Analyzers: search for witnesses in the order C, B, A

namespace detail {

inline CaseOutcome case_C(long long lambda, std::vector<UPath> paths, std::string reading = {}) {
  CaseOutcome o;
  o.tag = LemmaCase::C;
  o.lambda_doubled = lambda;
  o.paths = std::move(paths);
  o.reading = std::move(reading);
  return o;
}

inline std::optional<CaseOutcome> try_B(const LemmaInstance& in, long long lambda) {
  const Graph& g = in.host;
  const int p = in.p_len();
  if (lambda != 0 || p % 2 != 0) return std::nullopt;
  const VertexSet base = in.p.vertex_set() | VertexSet{in.x};
  CaseOutcome o;
  o.tag = LemmaCase::B;
  o.lambda_doubled = lambda;
  switch (in.lemma) {
    case LemmaId::xv1v2:
    case LemmaId::xPQ:
      if (in.lemma == LemmaId::xv1v2 && in.q_value() != 1) return std::nullopt;
      o.balanced = balanced_indices(in);
      if (o.balanced.empty()) return std::nullopt;
      o.certificate = find_H_partition(g, base, p / 2 + 1, p / 2 + 1);
      break;
    case LemmaId::xvw: {
      if (in.q_value() != 1 || 2 * edges_to(g, in.w, in.L()) != p) return std::nullopt;
      o.certificate = find_H_partition(g, base, p / 2 + 1, p / 2 + 1);
      o.reading = "V(P)+x";
      if (!o.certificate) {
        const VertexSet big = base | VertexSet{in.v};
        for (Vertex t : big.to_vector()) {
          if ((o.certificate = find_H_partition(g, big - VertexSet{t}, p / 2 + 1, p / 2 + 1))) break;
        }
        o.reading = "V(P)+{x,v} minus one";
      }
      break;
    }
    case LemmaId::PQw:
      if (in.q_value() != 1 || 2 * edges_to(g, in.w, in.L()) != p) return std::nullopt;
      o.certificate = find_H_partition(g, base, p / 2 + 1, p / 2 + 1);
      break;
  }
  if (!o.certificate) return std::nullopt;
  return o;
}

inline std::optional<CaseOutcome> try_C(const LemmaInstance& in, long long lambda, Budget& b) {
  const Graph& g = in.host;
  switch (in.lemma) {
    case LemmaId::xv1v2:
      if (auto wit = search_xv1v2(g, in.p, in.q, in.w1, in.w2, &b)) {
        CaseOutcome o = case_C(lambda, {wit->path}, wit->reading);
        o.index = wit->index;
        o.z = wit->z;
        return o;
      }
      return std::nullopt;
    case LemmaId::xPQ:
      if (auto pair = search_disjoint_upaths(g, in.u, g.vertices(), in.p_len(), in.q_value() + 1, &b))
        return case_C(lambda, {pair->first, pair->second});
      return std::nullopt;
    case LemmaId::xvw:
      if (auto pp = search_xvw(g, in.p, in.x, in.v, in.w, &b))
        return case_C(lambda, {pp->main, pp->r}, pp->reading);
      return std::nullopt;
    case LemmaId::PQw:
      if (auto pp = search_PQw(g, in.p, in.q, in.w, &b))
        return case_C(lambda, {pp->main, pp->r}, pp->reading);
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace detail

/// Validates the hypotheses, then returns the first case whose witness is found in
/// the order C, B, A. Finding none raises SoundnessError.
inline CaseOutcome analyze(const LemmaInstance& in, std::uint64_t budget_limit = default_budget()) {
  Budget b(budget_limit, "lemma analysis");
  check_hypotheses(in, &b);
  const long long lambda = in.lambda_doubled;
  if (auto c = detail::try_C(in, lambda, b)) return *c;
  if (auto c = detail::try_B(in, lambda)) return *c;
  if (auto facts = detail::case_A_facts(in, lambda)) {
    CaseOutcome o;
    o.tag = LemmaCase::A;
    o.lambda_doubled = lambda;
    o.facts = *facts;
    return o;
  }
  throw SoundnessError(std::string("no case holds for ") + std::string(lemma_name(in.lemma)) +
                       " instance " + std::to_string(in.id));
}

inline CaseOutcome analyze_xv1v2(const LemmaInstance& in) {
  if (in.lemma != LemmaId::xv1v2) throw InputError("analyze_xv1v2: wrong instance kind");
  return analyze(in);
}
inline CaseOutcome analyze_xPQ(const LemmaInstance& in) {
  if (in.lemma != LemmaId::xPQ) throw InputError("analyze_xPQ: wrong instance kind");
  return analyze(in);
}
inline CaseOutcome analyze_xvw(const LemmaInstance& in) {
  if (in.lemma != LemmaId::xvw) throw InputError("analyze_xvw: wrong instance kind");
  return analyze(in);
}
inline CaseOutcome analyze_PQw(const LemmaInstance& in) {
  if (in.lemma != LemmaId::PQw) throw InputError("analyze_PQw: wrong instance kind");
  return analyze(in);
}

// ---------------------------------------------------------------------------
// Instance generation

namespace detail {

using Seq = std::vector<Vertex>;

inline std::vector<Seq> all_upaths(const Graph& g, Vertex u, const VertexSet& allowed, int length,
                                   Budget& b) {
  std::vector<Seq> out;
  for_each_upath(
      g, u, allowed, length,
      [&](const Seq& s) {
        out.push_back(s);
        return false;
      },
      &b);
  return out;
}

/// u-paths of every length >= 1 in G[allowed].
inline std::vector<Seq> all_upaths_any_length(const Graph& g, Vertex u, const VertexSet& allowed,
                                              Budget& b) {
  std::vector<Seq> out;
  for (int len = 1; len < allowed.size(); ++len) {
    const std::size_t before = out.size();
    for_each_upath(
        g, u, allowed, len,
        [&](const Seq& s) {
          out.push_back(s);
          return false;
        },
        &b);
    if (out.size() == before) break;
  }
  return out;
}

/// Paths with at least two vertices in G[allowed], one orientation each (first < last).
inline std::vector<Seq> all_plain_paths(const Graph& g, const VertexSet& allowed, Budget& b) {
  std::vector<Seq> out;
  allowed.for_each([&](Vertex s) {
    for (int len = 1; len < allowed.size(); ++len) {
      bool any = false;
      for_each_upath(
          g, s, allowed, len,
          [&](const Seq& seq) {
            any = true;
            if (seq.front() < seq.back()) out.push_back(seq);
            return false;
          },
          &b);
      if (!any) break;
    }
  });
  return out;
}

/// u-paths of the given length in G[allowed] maximising e(V(P)).
inline std::vector<Seq> maximizing_upaths(const Graph& g, Vertex u, const VertexSet& allowed, int length,
                                          Budget& b) {
  std::vector<Seq> best;
  int best_e = -1;
  for (auto& s : all_upaths(g, u, allowed, length, b)) {
    const int e = inside_edges(g, s);
    if (e > best_e) {
      best_e = e;
      best.clear();
    }
    if (e == best_e) best.push_back(std::move(s));
  }
  return best;
}

/// First maximizer per vertex set.
inline std::vector<Seq> one_per_vertex_set(const std::vector<Seq>& paths) {
  std::vector<Seq> out;
  std::set<VertexSet> seen;
  for (const auto& s : paths)
    if (seen.insert(VertexSet::from(s)).second) out.push_back(s);
  return out;
}

/// Completes the numeric fields of a role assignment.
inline LemmaInstance finish(LemmaInstance in) {
  in.lambda_doubled = compute_lambda_doubled(in);
  return in;
}

/// Candidate instances on one host for fixed u, deleted roles and P, one per
/// admissible Q (and, for PQw, per maximizing reroute).
template <class F>
void for_each_completion(const LemmaInstance& base, Budget& b, F&& emit) {
  const Graph& g = base.host;
  const VertexSet l = base.L();
  if (base.lemma == LemmaId::xPQ) {
    const VertexSet vq = base.q.vertex_set();
    (g.neighbors(base.u) - base.p.vertex_set() - vq).for_each([&](Vertex x) {
      LemmaInstance in = base;
      in.x = x;
      emit(finish(std::move(in)));
    });
    return;
  }
  VertexSet removed = base.lemma == LemmaId::xv1v2 ? VertexSet{base.w1, base.w2}
                      : base.lemma == LemmaId::xvw ? VertexSet{base.v, base.w}
                                                   : VertexSet{base.w};
  const VertexSet allowed = g.vertices() - l - removed;
  std::set<std::tuple<Vertex, int, VertexSet>> seen;
  for (auto& qs : all_upaths_any_length(g, base.u, allowed, b)) {
    const Vertex x = qs.back();
    const int q = static_cast<int>(qs.size()) - 1;
    // Only x, q (and V(Q) for PQw) enter the statements.
    const bool by_set = base.lemma == LemmaId::PQw;
    if (!seen.insert({x, by_set ? 0 : q, by_set ? VertexSet::from(qs) : VertexSet{}}).second) continue;
    LemmaInstance in = base;
    in.q = UPath(qs);
    in.x = x;
    if (base.lemma != LemmaId::PQw) {
      emit(finish(std::move(in)));
      continue;
    }
    int best = -1;
    std::vector<Seq> reroutes;
    for (auto& r : all_upaths(g, base.u, base.p.vertex_set(), base.p.length(), b)) {
      const int idx = last_neighbor_index(g, r, x);
      if (idx > best) {
        best = idx;
        reroutes.clear();
      }
      if (idx == best) reroutes.push_back(std::move(r));
    }
    for (auto& r : reroutes) {
      LemmaInstance cand = in;
      cand.p = UPath(r);
      if (!is_absorbable(g, cand.p, x)) continue;
      emit(finish(std::move(cand)));
    }
  }
}

/// Role assignments (u, deleted vertices, Q for xPQ) with the vertex set they delete.
template <class F>
void for_each_roles(LemmaId lemma, const Graph& g, Vertex u, Budget& b, F&& f) {
  const int n = g.order();
  LemmaInstance base;
  base.lemma = lemma;
  base.host = g;
  base.u = u;
  switch (lemma) {
    case LemmaId::xv1v2:
      for (Vertex a = 0; a < n; ++a)
        for (Vertex c = a + 1; c < n; ++c) {
          if (a == u || c == u) continue;
          base.w1 = a;
          base.w2 = c;
          f(base, VertexSet{a, c});
        }
      return;
    case LemmaId::xPQ: {
      for (auto& qs : all_plain_paths(g, g.neighbors(u), b)) {
        base.q = UPath(qs);
        base.w1 = qs.front();
        base.w2 = qs.back();
        f(base, VertexSet::from(qs));
      }
      return;
    }
    case LemmaId::xvw:
      for (auto [a, c] : g.edges()) {
        if (a == u || c == u) continue;
        for (int flip = 0; flip < 2; ++flip) {
          base.v = flip ? c : a;
          base.w = flip ? a : c;
          f(base, VertexSet{a, c});
        }
      }
      return;
    case LemmaId::PQw:
      for (Vertex a = 0; a < n; ++a) {
        if (a == u) continue;
        base.w = a;
        f(base, VertexSet{a});
      }
      return;
  }
}

inline bool p_fits(LemmaId lemma, const Graph& g, Vertex u, const Seq& ps) {
  if (lemma != LemmaId::xPQ) return true;
  VertexSet l = VertexSet::from(ps);
  l.erase(u);
  return l.subset_of(g.neighbors(u));
}

}  // namespace detail

/// Every admissible instance on the host with lambda >= 0. P ranges over one
/// representative per maximizing vertex set (the statements depend on V(P) only,
/// except PQw where every maximizing reroute is kept); Q over its distinct
/// (x, q) data, or (x, V(Q)) for PQw.
template <class F>
void for_each_instance(LemmaId lemma, const Graph& g, F&& f, std::uint64_t budget_limit = default_budget()) {
  Budget b(budget_limit, "instance enumeration");
  std::uint64_t next_id = 0;
  for (Vertex u = 0; u < g.order(); ++u) {
    detail::for_each_roles(lemma, g, u, b, [&](const LemmaInstance& roles, const VertexSet& removed) {
      const VertexSet allowed = g.vertices() - removed;
      for (int p = 1; p < allowed.size(); ++p) {
        const auto maxi = detail::maximizing_upaths(g, u, allowed, p, b);
        if (maxi.empty()) break;
        for (const auto& ps : detail::one_per_vertex_set(maxi)) {
          if (!detail::p_fits(lemma, g, u, ps)) continue;
          LemmaInstance base = roles;
          base.p = UPath(ps);
          detail::for_each_completion(base, b, [&](LemmaInstance in) {
            if (in.lambda_doubled < 0) return;
            in.id = next_id++;
            f(in);
          });
        }
      }
    });
  }
}

struct SampleStats {
  std::uint64_t attempts = 0;
  std::uint64_t accepted = 0;
  std::uint64_t discarded = 0;
};

namespace detail {

inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }
inline double draw_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& items) {
  return items[draw(rng, items.size())];
}

/// Random host: G(n, d) with d in [0.35, 0.95], or, one time in five, a planted
/// H(a, a) block (independent X, arbitrary Y, all X-Y edges) inside G(n, d).
inline Graph random_host(int n, std::mt19937_64& rng) {
  Graph g(n);
  const double d = 0.35 + 0.6 * draw_unit(rng);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex c = a + 1; c < n; ++c)
      if (draw_unit(rng) < d) g.add_edge(a, c);
  if (n >= 4 && draw(rng, 5) == 0) {
    const int a = 2 + static_cast<int>(draw(rng, static_cast<std::uint64_t>(std::min(3, n / 2 - 1))));
    std::vector<Vertex> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int i = 0; i < a; ++i) {
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const bool in_y = j >= a && j < 2 * a;
        if (in_y) g.add_edge(perm[i], perm[j]);
        else if (g.adjacent(perm[i], perm[j])) g.remove_edge(perm[i], perm[j]);
      }
    }
  }
  if (draw(rng, 2) == 0) {
    const Vertex hub = static_cast<Vertex>(draw(rng, n));
    for (Vertex c = 0; c < n; ++c)
      if (c != hub) g.add_edge(hub, c);
  }
  return g;
}

/// Random self-avoiding walk in G[allowed] from a random start, stopping at a
/// random target length or when stuck.
inline Seq random_walk_path(const Graph& g, const VertexSet& allowed, std::mt19937_64& rng) {
  Seq walk;
  if (allowed.empty()) return walk;
  walk.push_back(pick(rng, allowed.to_vector()));
  const int target = 1 + static_cast<int>(draw(rng, static_cast<std::uint64_t>(std::max(1, std::min(4, allowed.size() - 1)))));
  VertexSet used{walk.back()};
  while (static_cast<int>(walk.size()) <= target) {
    const std::vector<Vertex> next = (g.neighbors(walk.back()) & (allowed - used)).to_vector();
    if (next.empty()) break;
    walk.push_back(pick(rng, next));
    used.insert(walk.back());
  }
  return walk;
}

/// One attempt at a random instance on a random host.
inline std::optional<LemmaInstance> synthesize(LemmaId lemma, int n, std::mt19937_64& rng, Budget& b) {
  const Graph g = random_host(n, rng);
  const Vertex u = static_cast<Vertex>(draw(rng, n));
  LemmaInstance base;
  base.lemma = lemma;
  base.host = g;
  base.u = u;
  VertexSet removed;
  std::vector<Vertex> others;
  for (Vertex c = 0; c < n; ++c)
    if (c != u) others.push_back(c);
  std::shuffle(others.begin(), others.end(), rng);

  switch (lemma) {
    case LemmaId::xv1v2:
      if (others.size() < 2) return std::nullopt;
      base.w1 = others[0];
      base.w2 = others[1];
      removed = VertexSet{base.w1, base.w2};
      break;
    case LemmaId::xPQ: {
      Seq q = random_walk_path(g, g.neighbors(u), rng);
      if (q.size() < 2) return std::nullopt;
      if (q.front() > q.back()) std::reverse(q.begin(), q.end());
      base.q = UPath(q);
      base.w1 = q.front();
      base.w2 = q.back();
      removed = VertexSet::from(q);
      break;
    }
    case LemmaId::xvw: {
      std::vector<std::pair<Vertex, Vertex>> edges;
      for (auto e : g.edges())
        if (e.first != u && e.second != u) edges.push_back(e);
      if (edges.empty()) return std::nullopt;
      auto [a, c] = pick(rng, edges);
      if (draw(rng, 2)) std::swap(a, c);
      base.v = a;
      base.w = c;
      removed = VertexSet{a, c};
      break;
    }
    case LemmaId::PQw:
      if (others.empty()) return std::nullopt;
      base.w = others[0];
      removed = VertexSet{base.w};
      break;
  }
  const VertexSet allowed = g.vertices() - removed;
  const int p_max = std::min(allowed.size() - 2, 6);
  if (p_max < 1) return std::nullopt;
  const int p = 1 + static_cast<int>(draw(rng, p_max));
  std::vector<Seq> maxi = maximizing_upaths(g, u, allowed, p, b);
  std::erase_if(maxi, [&](const Seq& s) { return !p_fits(lemma, g, u, s); });
  if (maxi.empty()) return std::nullopt;
  base.p = UPath(pick(rng, maxi));

  std::vector<LemmaInstance> cands;
  for_each_completion(base, b, [&](LemmaInstance in) {
    if (in.lambda_doubled >= 0) cands.push_back(std::move(in));
  });
  if (cands.empty()) return std::nullopt;
  return pick(rng, cands);
}

}  // namespace detail

/// Deterministic stream of admissible instances on n-vertex hosts. Each attempt
/// draws a host and roles; attempts that admit no instance are discarded and
/// counted. Gives up after 50 attempts per requested instance.
inline std::vector<LemmaInstance> sample_instances(LemmaId lemma, int n, int count, std::uint64_t seed,
                                                   SampleStats* stats = nullptr) {
  if (n < 1 || n > 12) throw InputError("sample_instances: n must be in 1..12");
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(lemma) * 1315423911ULL +
                      static_cast<std::uint64_t>(n));
  std::vector<LemmaInstance> out;
  SampleStats local;
  SampleStats& st = stats ? *stats : local;
  const std::uint64_t limit = 50ULL * static_cast<std::uint64_t>(std::max(count, 0));
  while (static_cast<int>(out.size()) < count && st.attempts < limit) {
    ++st.attempts;
    Budget b(default_budget(), "instance synthesis");
    std::optional<LemmaInstance> in;
    try {
      in = detail::synthesize(lemma, n, rng, b);
    } catch (const CapabilityError&) {
      in.reset();
    }
    if (!in) {
      ++st.discarded;
      continue;
    }
    in->id = out.size();
    out.push_back(std::move(*in));
    ++st.accepted;
  }
  return out;
}

}  // namespace esos

#endif  // ESOS_LEMMA_ENGINE_HPP
