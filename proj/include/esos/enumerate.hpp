#ifndef ESOS_ENUMERATE_HPP
#define ESOS_ENUMERATE_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "esos/errors.hpp"
#include "esos/graph.hpp"

namespace esos {

inline constexpr int kEnumerationCap = 7;

/// Upper triangle of G under the relabelling v -> perm[v], read column-wise, as bits.
inline std::uint64_t adjacency_code(const Graph& g, const std::vector<Vertex>& order) {
  // order[i] is the old vertex placed at position i.
  const int n = g.order();
  std::uint64_t code = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) code = (code << 1) | (g.adjacent(order[i], order[j]) ? 1u : 0u);
  return code;
}

namespace detail {

/// Stable colour refinement: colours are ranks of (colour, sorted neighbour colours).
inline std::vector<int> refine_colours(const Graph& g) {
  const int n = g.order();
  std::vector<int> colour(static_cast<std::size_t>(n), 0);
  for (int round = 0; round <= n; ++round) {
    std::vector<std::pair<int, std::vector<int>>> sig(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
      sig[v].first = colour[v];
      g.neighbors(v).for_each([&](Vertex w) { sig[v].second.push_back(colour[w]); });
      std::sort(sig[v].second.begin(), sig[v].second.end());
    }
    std::vector<std::pair<int, std::vector<int>>> distinct(sig);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<int> next(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v)
      next[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sig[v]) - distinct.begin());
    if (next == colour) break;
    colour = std::move(next);
  }
  return colour;
}

}  // namespace detail

struct CanonicalForm {
  std::uint64_t code = 0;
  std::vector<Vertex> order;  ///< order[i] = original vertex at canonical position i
};

/// Minimum adjacency code over orderings that list colour classes in colour order.
/// Colour refinement is isomorphism-invariant, so the minimum is a canonical form.
inline CanonicalForm canonical_form(const Graph& g) {
  const int n = g.order();
  if (n > 11) throw CapabilityError("canonical_form: capped at 11 vertices");
  const std::vector<int> colour = detail::refine_colours(g);
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return colour[a] < colour[b]; });
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && colour[order[j]] == colour[order[i]]) ++j;
    cells.emplace_back(i, j);
    i = j;
  }
  CanonicalForm best{~std::uint64_t{0}, order};
  auto rec = [&](auto&& self, std::size_t cell) -> void {
    if (cell == cells.size()) {
      const std::uint64_t c = adjacency_code(g, order);
      if (c < best.code) best = {c, order};
      return;
    }
    auto [lo, hi] = cells[cell];
    std::sort(order.begin() + lo, order.begin() + hi);
    do {
      self(self, cell + 1);
    } while (std::next_permutation(order.begin() + lo, order.begin() + hi));
  };
  rec(rec, 0);
  return best;
}

inline Graph relabel(const Graph& g, const std::vector<Vertex>& order) {
  std::vector<int> pos(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  Graph h(g.order());
  for (auto [a, b] : g.edges()) h.add_edge(pos[a], pos[b]);
  return h;
}

/// One representative per isomorphism class on n vertices, in canonical labelling,
/// ordered by canonical code. Built by adding a vertex with every neighbourhood to
/// the classes on n-1 vertices.
inline std::vector<Graph> enumerate_graphs(int n) {
  if (n < 0) throw InputError("enumerate_graphs: negative order");
  if (n > kEnumerationCap) {
    throw CapabilityError("built-in enumeration stops at n = " + std::to_string(kEnumerationCap) +
                          "; stream larger graphs as graph6");
  }
  std::vector<Graph> level{Graph(0)};
  for (int m = 1; m <= n; ++m) {
    std::map<std::uint64_t, Graph> classes;
    for (const Graph& base : level) {
      for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << (m - 1)); ++mask) {
        Graph g(m);
        for (auto [a, b] : base.edges()) g.add_edge(a, b);
        for (int v = 0; v < m - 1; ++v)
          if (mask & (std::uint32_t{1} << v)) g.add_edge(v, m - 1);
        const CanonicalForm cf = canonical_form(g);
        if (!classes.count(cf.code)) classes.emplace(cf.code, relabel(g, cf.order));
      }
    }
    level.clear();
    for (auto& [code, g] : classes) level.push_back(std::move(g));
  }
  return level;
}

}  // namespace esos

#endif  // ESOS_ENUMERATE_HPP
