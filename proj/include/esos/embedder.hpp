#ifndef ESOS_EMBEDDER_HPP
#define ESOS_EMBEDDER_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "esos/embedding.hpp"
#include "esos/errors.hpp"
#include "esos/graph.hpp"
#include "esos/graph_core.hpp"
#include "esos/lemma_engine.hpp"
#include "esos/path_surgery.hpp"
#include "esos/report.hpp"
#include "esos/spider.hpp"

namespace esos {

enum class CertificateKind { WholeGraphH, LocalH };

inline const char* certificate_kind_name(CertificateKind k) {
  return k == CertificateKind::WholeGraphH ? "WholeGraphH" : "LocalH";
}

struct Certified {
  CertificateKind kind = CertificateKind::LocalH;
  HCertificate cert;
  bool t0_member = false;
  /// LocalH: the certificate containing u with the largest X found (|Y| = k/2).
  std::optional<HCertificate> maximal;
};

struct EmbedOutcome {
  std::optional<Embedding> embedding;
  std::optional<Certified> certified;
  /// "recursive" (extension of the recursive embedding), "guided" (search over
  /// embeddings of the smaller spider), "fallback" (exhaustive) or "certified".
  std::string phase;

  bool embedded() const { return embedding.has_value(); }
};

struct ConstructiveOptions {
  /// Insist that the local condition holds (input error otherwise). When false the
  /// same procedure runs and non-embeddability is certified whenever a certificate of
  /// the stated shape exists.
  bool require_local_condition = true;
  std::uint64_t budget = default_budget();
  /// Node budget for enumerating embeddings of the smaller spider per level.
  std::uint64_t guided_budget = 20'000;
};

namespace detail {

/// Orders legs longest first and checks they realise t.
inline std::optional<Embedding> assemble(const Graph& g, const Spider& t, Vertex u, std::vector<UPath> legs) {
  std::stable_sort(legs.begin(), legs.end(),
                   [](const UPath& a, const UPath& b) { return a.length() > b.length(); });
  Embedding e;
  e.center = u;
  e.spider = t;
  e.legs = std::move(legs);
  if (!verify_embedding(g, t, e)) return std::nullopt;
  return e;
}

inline VertexSet inner_except(const Embedding& e, std::initializer_list<std::size_t> skip) {
  VertexSet s;
  for (std::size_t i = 0; i < e.legs.size(); ++i) {
    if (std::find(skip.begin(), skip.end(), i) != skip.end()) continue;
    s |= e.legs[i].inner();
  }
  return s;
}

/// Legs of `base` (an embedding of strip_leaf(t, 0)) that the stripped leg became.
inline std::vector<std::size_t> grown_leg_candidates(const Embedding& base, int l1) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < base.legs.size(); ++i)
    if (base.legs[i].length() == l1 - 1) out.push_back(i);
  return out;
}

/// Replaces one candidate leg by any u-path of length l1 avoiding the other legs.
inline std::optional<Embedding> quick_move(const Graph& g, const Spider& t, const Embedding& base,
                                           Budget* budget) {
  const int l1 = t.legs()[0];
  const Vertex u = base.center;
  if (l1 == 1) {
    const VertexSet free = g.neighbors(u) - base.vertex_set();
    if (free.empty()) return std::nullopt;
    auto legs = base.legs;
    legs.push_back(UPath({u, free.first()}));
    return assemble(g, t, u, std::move(legs));
  }
  for (std::size_t j : grown_leg_candidates(base, l1)) {
    const VertexSet others = inner_except(base, {j});
    if (auto p = find_upath(g, u, g.vertices() - others, l1, budget)) {
      auto legs = base.legs;
      legs[j] = *p;
      if (auto e = assemble(g, t, u, std::move(legs))) return e;
    }
  }
  return std::nullopt;
}

/// Rebuilds the grown leg together with one other leg as two disjoint u-paths over
/// their joint vertices plus all unused vertices.
inline std::optional<Embedding> exchange_move(const Graph& g, const Spider& t, const Embedding& base,
                                              Budget* budget) {
  const int l1 = t.legs()[0];
  const Vertex u = base.center;
  for (std::size_t j : grown_leg_candidates(base, l1)) {
    for (std::size_t i = 0; i < base.legs.size(); ++i) {
      if (i == j) continue;
      const VertexSet domain = g.vertices() - inner_except(base, {i, j});
      if (auto pair = search_disjoint_upaths(g, u, domain, l1, base.legs[i].length(), budget)) {
        auto legs = base.legs;
        legs[j] = pair->first;
        legs[i] = pair->second;
        if (auto e = assemble(g, t, u, std::move(legs))) return e;
      }
    }
  }
  return std::nullopt;
}

/// Doubled selection score of an embedding of the smaller spider:
/// (delta * (2d(v) - e(v,S0) - 2n), min(2e(w,L), l-1) + min(2e(x,L), l), sum e(V(P_i))).
using Score = std::tuple<long long, long long, long long>;

inline Score selection_score(const Graph& g, const Embedding& base, int l1, const VertexSet& s0,
                             Budget* budget) {
  const auto cands = grown_leg_candidates(base, l1);
  long long sum_e = 0;
  for (const auto& leg : base.legs) sum_e += edge_counts(g, leg.vertex_set()).inside;
  if (cands.empty() || l1 < 2) return {0, 0, sum_e};
  const UPath& p1 = base.legs[cands.front()];
  const VertexSet l = inner_except(base, {cands.front()});
  const long long ell = l.size();
  const Vertex v = p1.end();
  const SecondEnds se = second_ends(g, p1, l);
  const Vertex w = se.representative();
  const bool w_in_l1 = p1.inner().contains(w);
  const UPath q = longest_u_path(g, base.center, base.vertex_set() - VertexSet{base.center}, budget);
  const Vertex x = q.end();
  const long long first =
      w_in_l1 ? 2LL * g.degree(v) - edges_to(g, v, s0) - 2LL * g.order() : 0;
  const long long ew = w >= 0 ? edges_to(g, w, l) : 0;
  const long long ex = q.length() > 0 ? edges_to(g, x, l) : 0;
  const long long second = std::min(2 * ew, ell - 1) + std::min(2 * ex, ell);
  return {first, second, sum_e};
}

struct Ctx {
  const Graph& g;
  Vertex u;
  const ConstructiveOptions& opt;
  std::string phase;
};

/// Induction on the longest leg. Returns an embedding of t at u, or nullopt when
/// the guided moves found none (which proves nothing by itself).
inline std::optional<Embedding> extend(const Spider& t, Ctx& ctx, bool top) {
  const Graph& g = ctx.g;
  const Vertex u = ctx.u;
  if (t.empty()) return Embedding{u, t, {}};
  const int l1 = t.legs()[0];
  const Spider smaller = strip_leaf(t, 0);
  std::optional<Embedding> base = extend(smaller, ctx, false);
  if (!base) base = embed_bruteforce(g, smaller, u, ctx.opt.budget);
  if (!base) return std::nullopt;
  if (auto e = quick_move(g, t, *base, nullptr)) {
    if (top) ctx.phase = "recursive";
    return e;
  }

  std::vector<Embedding> pool;
  VertexSet s0;
  try {
    Budget b(ctx.opt.guided_budget, "guided enumeration");
    for_each_embedding(g, smaller, u, g.vertices(), b, [&](const Embedding& e) {
      pool.push_back(e);
      for (std::size_t j : grown_leg_candidates(e, l1)) s0.insert(e.legs[j].end());
      return false;
    });
  } catch (const CapabilityError&) {
    return std::nullopt;  // budget hit: the exhaustive fallback decides
  }
  try {
    Budget b(ctx.opt.guided_budget * 10, "guided moves");
    std::vector<std::pair<Score, std::size_t>> order;
    for (std::size_t i = 0; i < pool.size(); ++i)
      order.emplace_back(selection_score(g, pool[i], l1, s0, &b), i);
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [score, i] : order) {
      if (auto e = quick_move(g, t, pool[i], &b)) {
        if (top) ctx.phase = "guided";
        return e;
      }
      if (auto e = exchange_move(g, t, pool[i], &b)) {
        if (top) ctx.phase = "guided";
        return e;
      }
    }
  } catch (const CapabilityError&) {
  }
  return std::nullopt;
}

/// Largest a with an H(a, half)-subgraph containing u, starting from a known one.
inline HCertificate maximal_local(const Graph& g, int half, Vertex u, HCertificate found) {
  for (int a = found.a() + 1; a + half <= g.order(); ++a) {
    auto c = find_H_subgraph(g, a, half, u);
    if (!c) break;
    found = *c;
  }
  return found;
}

}  // namespace detail

/// Embed-or-certify at u. Certificates are issued only after the exhaustive search
/// confirms that t does not embed at u.
inline EmbedOutcome embed_constructive(const Graph& g, const Spider& t, Vertex u,
                                       const ConstructiveOptions& opt = {}) {
  if (!g.has_vertex(u)) throw InputError("embed_constructive: vertex out of range");
  const int k = t.edges();
  if (k < 1) throw InputError("embed_constructive: spider has no edges");
  if (g.degree(u) < k) throw InputError("embed_constructive: d(u) < k");
  if (opt.require_local_condition && satisfies_local_condition(g, k)) {
    throw InputError("embed_constructive: local condition fails");
  }
  EmbedOutcome out;
  detail::Ctx ctx{g, u, opt, {}};
  if (auto e = detail::extend(t, ctx, true)) {
    out.embedding = std::move(e);
    out.phase = ctx.phase;
    return out;
  }
  if (auto e = embed_bruteforce(g, t, u, opt.budget)) {
    out.embedding = std::move(e);
    out.phase = "fallback";
    return out;
  }

  // t does not embed at u.
  auto unexplained = [&](const std::string& why) -> EmbedOutcome {
    const std::string msg = "embed_constructive: " + t.to_string() + " does not embed at " +
                            std::to_string(u) + " in " + to_graph6(g) + " and " + why;
    if (opt.require_local_condition) throw SoundnessError(msg);
    throw PreconditionError(msg);
  };
  if (!in_T0_family(t)) return unexplained("the spider has an odd leg");
  const int half = k / 2;
  Certified c;
  c.t0_member = true;
  bool have = false;
  if (t == t0(k)) {
    if (auto h = find_H_subgraph(g, half + 1, half, u)) {
      c.kind = CertificateKind::LocalH;
      c.cert = *h;
      c.maximal = detail::maximal_local(g, half, u, *h);
      have = true;
    }
  } else {
    for (const auto& h : H_partitions(g, g.vertices())) {
      if (h.b() == half) {
        c.kind = CertificateKind::WholeGraphH;
        c.cert = h;
        have = true;
        break;
      }
    }
    if (!have) {
      if (auto h = find_H_subgraph(g, half + 1, half, u)) {
        c.kind = CertificateKind::LocalH;
        c.cert = *h;
        c.maximal = detail::maximal_local(g, half, u, *h);
        have = true;
      }
    }
  }
  if (!have) return unexplained("no certificate of the stated shape exists");
  if (!verify_H_certificate(g, c.cert)) throw SoundnessError("embed_constructive: certificate fails verification");
  if (c.kind == CertificateKind::LocalH && !c.cert.support().contains(u))
    throw SoundnessError("embed_constructive: local certificate misses u");
  out.certified = c;
  out.phase = "certified";
  return out;
}

/// Pipeline for one graph and k: strip violating sets until the local condition
/// holds, pick a vertex of degree >= k, then embed every spider with k edges.
inline Report theorem2_check(const Graph& g, int k, const ConstructiveOptions& opt = {}) {
  if (k < 1) throw InputError("theorem2_check: k must be positive");
  if (!satisfies_density(g, k)) throw InputError("theorem2_check: density condition fails");
  Report r;
  r.scope = "theorem2";
  r.n_min = r.n_max = g.order();
  r.k_min = r.k_max = k;
  r.graphs = 1;

  Graph h = g;
  std::vector<Vertex> ids(static_cast<std::size_t>(g.order()));
  for (int i = 0; i < g.order(); ++i) ids[i] = i;
  while (auto s = satisfies_local_condition(h, k)) {
    const int before = h.order();
    std::vector<Vertex> sub;
    h = h.induced(h.vertices() - *s, &sub);
    for (auto& v : sub) v = ids[v];
    ids = std::move(sub);
    if (h.order() >= before) throw SoundnessError("theorem2_check: reduction did not shrink the graph");
    if (!satisfies_density(h, k)) throw SoundnessError("theorem2_check: reduction broke the density condition");
    r.tally("reductions");
  }
  const auto u = heavy_vertex(h, h.vertices(), k);
  if (!u) throw SoundnessError("theorem2_check: no vertex of degree >= k after reduction");

  for (const Spider& t : enumerate_spiders(k)) {
    ++r.tests;
    std::optional<Embedding> found;
    try {
      EmbedOutcome o = embed_constructive(h, t, *u, opt);
      if (o.embedded()) {
        found = o.embedding;
        ++r.embeddings;
        r.tally("phase." + o.phase);
      } else {
        ++r.certificates;
        r.tally(std::string("certified.") + certificate_kind_name(o.certified->kind));
        for (Vertex x : o.certified->cert.x.to_vector()) {
          if ((found = embed_into_H(h, o.certified->cert, t, x))) break;
        }
        if (!found) found = embed_bruteforce(h, t, std::nullopt, opt.budget);
      }
    } catch (const SoundnessError&) {
      ++r.errors;
      r.tally("unexplained");
      found = embed_bruteforce(h, t, std::nullopt, opt.budget);
    }
    if (!found) {
      r.failures.push_back({to_graph6(g), k, t.to_string(), ids[*u], "no embedding found"});
      continue;
    }
    Embedding mapped = *found;
    mapped.center = ids[mapped.center];
    for (auto& leg : mapped.legs) {
      auto seq = leg.sequence();
      for (auto& v : seq) v = ids[v];
      leg = UPath(seq);
    }
    if (!verify_embedding(g, t, mapped)) {
      r.failures.push_back({to_graph6(g), k, t.to_string(), ids[*u], "mapped embedding fails verification"});
    }
  }
  return r;
}

}  // namespace esos

#endif  // ESOS_EMBEDDER_HPP
