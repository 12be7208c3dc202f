#ifndef ESOS_EMBEDDING_HPP
#define ESOS_EMBEDDING_HPP

#include <optional>
#include <vector>

#include "esos/errors.hpp"
#include "esos/graph.hpp"
#include "esos/graph_core.hpp"
#include "esos/path_surgery.hpp"
#include "esos/spider.hpp"

namespace esos {

/// A copy of a spider: legs[i] runs from the center and has length spider.legs()[i].
struct Embedding {
  Vertex center = -1;
  Spider spider;
  std::vector<UPath> legs;

  VertexSet vertex_set() const {
    VertexSet s{center};
    for (const auto& l : legs) s |= l.vertex_set();
    return s;
  }

  friend bool operator==(const Embedding&, const Embedding&) = default;
};

inline bool verify_embedding(const Graph& g, const Spider& t, const Embedding& e) {
  if (!g.has_vertex(e.center)) return false;
  if (!(e.spider == t)) return false;
  if (static_cast<int>(e.legs.size()) != t.leg_count()) return false;
  VertexSet used{e.center};
  for (std::size_t i = 0; i < e.legs.size(); ++i) {
    const UPath& leg = e.legs[i];
    if (leg.anchor() != e.center || leg.length() != t.legs()[i]) return false;
    if (!is_valid_upath(g, leg)) return false;
    if (leg.inner().intersects(used)) return false;
    used |= leg.inner();
  }
  return used.size() == t.edges() + 1;
}

namespace detail {

/// Backtracking placement of legs, longest first. Consecutive legs of equal length
/// have increasing first vertices, so each embedding is produced once up to
/// permuting equal legs.
template <class F>
class LegPlacer {
 public:
  LegPlacer(const Graph& g, const Spider& t, Vertex center, const VertexSet& allowed, Budget& budget,
            F& on_complete)
      : g_(g), lengths_(t.legs()), center_(center), allowed_(allowed), budget_(budget),
        on_complete_(on_complete) {
    used_.insert(center);
    legs_.resize(lengths_.size());
    suffix_.assign(lengths_.size() + 1, 0);
    for (int i = static_cast<int>(lengths_.size()) - 1; i >= 0; --i)
      suffix_[i] = suffix_[i + 1] + lengths_[i];
  }

  bool run() { return place(0); }

 private:
  bool place(std::size_t i) {
    if (i == lengths_.size()) return on_complete_(legs_);
    const VertexSet free = allowed_ - used_;
    if (free.size() < suffix_[i]) return false;
    VertexSet starts = g_.neighbors(center_) & free;
    if (starts.size() < static_cast<int>(lengths_.size() - i)) return false;
    const Vertex floor = (i > 0 && lengths_[i] == lengths_[i - 1]) ? legs_[i - 1][1] : -1;
    for (Vertex s : starts.to_vector()) {
      if (s <= floor) continue;
      legs_[i] = {center_, s};
      used_.insert(s);
      const bool stop = grow(i);
      used_.erase(s);
      if (stop) return true;
    }
    return false;
  }

  bool grow(std::size_t i) {
    budget_.tick();
    auto& leg = legs_[i];
    const int have = static_cast<int>(leg.size()) - 1;
    if (have == lengths_[i]) return place(i + 1);
    const VertexSet free = allowed_ - used_;
    const int need = lengths_[i] - have;
    if (free.size() < suffix_[i] - have) return false;
    if (need >= 2 && reachable(g_, leg.back(), free).size() - 1 < need) return false;
    for (Vertex w : (g_.neighbors(leg.back()) & free).to_vector()) {
      leg.push_back(w);
      used_.insert(w);
      const bool stop = grow(i);
      used_.erase(w);
      leg.pop_back();
      if (stop) return true;
    }
    return false;
  }

  const Graph& g_;
  const std::vector<int>& lengths_;
  Vertex center_;
  VertexSet allowed_;
  Budget& budget_;
  F& on_complete_;
  VertexSet used_;
  std::vector<std::vector<Vertex>> legs_;
  std::vector<int> suffix_;
};

inline Embedding make_embedding(Vertex center, const Spider& t,
                                const std::vector<std::vector<Vertex>>& legs) {
  Embedding e;
  e.center = center;
  e.spider = t;
  e.legs.reserve(legs.size());
  for (const auto& l : legs) e.legs.emplace_back(l);
  return e;
}

}  // namespace detail

/// Calls f(embedding) for each embedding of t centred at u inside G[allowed], up to
/// permutations of equal legs. f returns true to stop; returns whether it stopped.
template <class F>
bool for_each_embedding(const Graph& g, const Spider& t, Vertex u, const VertexSet& allowed,
                        Budget& budget, F&& f) {
  if (!g.has_vertex(u)) throw InputError("embedding center out of range");
  auto adapter = [&](const std::vector<std::vector<Vertex>>& legs) {
    return f(detail::make_embedding(u, t, legs));
  };
  detail::LegPlacer<decltype(adapter)> placer(g, t, u, allowed, budget, adapter);
  return placer.run();
}

/// Independent backtracking oracle: an embedding of t centred at u (any center when
/// u is empty), or nullopt when none exists.
inline std::optional<Embedding> embed_bruteforce(const Graph& g, const Spider& t,
                                                 std::optional<Vertex> u = std::nullopt,
                                                 std::uint64_t budget_limit = default_budget()) {
  if (g.order() > 16 && t.edges() > 12) {
    throw CapabilityError("embed_bruteforce: needs n <= 16 or k <= 12");
  }
  if (u && !g.has_vertex(*u)) throw InputError("embed_bruteforce: center out of range");
  Budget budget(budget_limit, "embed_bruteforce");
  std::optional<Embedding> found;
  auto try_center = [&](Vertex c) {
    if (g.degree(c) < t.leg_count()) return false;
    return for_each_embedding(g, t, c, g.vertices(), budget, [&](const Embedding& e) {
      found = e;
      return true;
    });
  };
  if (u) {
    try_center(*u);
  } else {
    for (Vertex c = 0; c < g.order() && !found; ++c) try_center(c);
  }
  return found;
}

/// Embeds an all-even spider into a verified H-certificate from an X vertex u, with
/// legs alternating Y, X, Y, ... along X-Y edges only.
inline std::optional<Embedding> embed_into_H(const Graph& g, const HCertificate& cert,
                                             const Spider& t, Vertex u) {
  if (!verify_H_certificate(g, cert)) throw InputError("embed_into_H: certificate does not verify");
  if (!in_T0_family(t)) throw InputError("embed_into_H: spider has an odd leg");
  if (!cert.support().contains(u)) throw InputError("embed_into_H: u outside the certificate");
  const int half = t.edges() / 2;
  if (!cert.x.contains(u) || cert.b() < half || cert.a() < half + 1) return std::nullopt;
  std::vector<Vertex> ys = cert.y.to_vector();
  std::vector<Vertex> xs = (cert.x - VertexSet{u}).to_vector();
  std::size_t yi = 0;
  std::size_t xi = 0;
  Embedding e;
  e.center = u;
  e.spider = t;
  for (int len : t.legs()) {
    std::vector<Vertex> leg{u};
    for (int step = 0; step < len / 2; ++step) {
      leg.push_back(ys[yi++]);
      leg.push_back(xs[xi++]);
    }
    e.legs.emplace_back(std::move(leg));
  }
  if (!verify_embedding(g, t, e)) throw SoundnessError("embed_into_H produced an invalid embedding");
  return e;
}

}  // namespace esos

#endif  // ESOS_EMBEDDING_HPP
