#ifndef ESOS_GRAPH_HPP
#define ESOS_GRAPH_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "esos/errors.hpp"
#include "esos/vertex_set.hpp"

namespace esos {

/// Dense undirected simple graph on vertices 0..n-1 (n <= 128), one bit row per vertex.
class Graph {
 public:
  Graph() = default;

  explicit Graph(int n) : n_(n) {
    if (n < 0 || n > kMaxVertices) {
      throw InputError("graph order " + std::to_string(n) + " outside 0.." +
                       std::to_string(kMaxVertices));
    }
    rows_.resize(static_cast<std::size_t>(n));
  }

  static Graph from_edges(int n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
    Graph g(n);
    for (auto [a, b] : edges) g.add_edge(a, b);
    return g;
  }

  int order() const { return n_; }
  VertexSet vertices() const { return VertexSet::range(n_); }

  void add_edge(Vertex a, Vertex b) {
    check_pair(a, b);
    rows_[a].insert(b);
    rows_[b].insert(a);
  }

  void remove_edge(Vertex a, Vertex b) {
    check_pair(a, b);
    rows_[a].erase(b);
    rows_[b].erase(a);
  }

  bool adjacent(Vertex a, Vertex b) const { return rows_[a].contains(b); }
  const VertexSet& neighbors(Vertex v) const { return rows_[v]; }
  int degree(Vertex v) const { return rows_[v].size(); }

  bool has_vertex(Vertex v) const { return v >= 0 && v < n_; }
  bool contains_all(const VertexSet& s) const { return s.subset_of(vertices()); }

  int edge_count() const {
    int twice = 0;
    for (const auto& r : rows_) twice += r.size();
    return twice / 2;
  }

  std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex a = 0; a < n_; ++a) {
      rows_[a].for_each([&](Vertex b) {
        if (a < b) out.emplace_back(a, b);
      });
    }
    return out;
  }

  /// G[keep] relabelled to 0..|keep|-1 in increasing id order; original_ids[i] is the
  /// old id of new vertex i.
  Graph induced(const VertexSet& keep, std::vector<Vertex>* original_ids = nullptr) const {
    const std::vector<Vertex> ids = (keep & vertices()).to_vector();
    std::vector<int> index(static_cast<std::size_t>(n_), -1);
    for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = static_cast<int>(i);
    Graph h(static_cast<int>(ids.size()));
    for (std::size_t i = 0; i < ids.size(); ++i) {
      rows_[ids[i]].for_each([&](Vertex b) {
        if (index[b] >= 0) h.rows_[i].insert(index[b]);
      });
    }
    if (original_ids) *original_ids = ids;
    return h;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_pair(Vertex a, Vertex b) const {
    if (!has_vertex(a) || !has_vertex(b)) {
      throw InputError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                       ") outside vertex range");
    }
    if (a == b) throw InputError("loop at vertex " + std::to_string(a));
  }

  int n_ = 0;
  std::vector<VertexSet> rows_;
};

inline Graph complete_graph(int n) {
  Graph g(n);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) g.add_edge(a, b);
  return g;
}

inline Graph cycle_graph(int n) {
  Graph g(n);
  for (Vertex a = 0; a < n; ++a) g.add_edge(a, (a + 1) % n);
  return g;
}

inline Graph path_graph(int n) {
  Graph g(n);
  for (Vertex a = 0; a + 1 < n; ++a) g.add_edge(a, a + 1);
  return g;
}

/// K_{1,leaves}; the center is vertex 0.
inline Graph star_graph(int leaves) {
  Graph g(leaves + 1);
  for (Vertex a = 1; a <= leaves; ++a) g.add_edge(0, a);
  return g;
}

// graph6: N(n) followed by the upper triangle read column by column
// (x(0,1), x(0,2), x(1,2), x(0,3), ...), packed 6 bits per byte, big-endian, +63.

inline Graph parse_graph6(std::string_view text) {
  constexpr std::string_view header = ">>graph6<<";
  if (text.substr(0, header.size()) == header) text.remove_prefix(header.size());
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty()) throw InputError("graph6: empty string");

  for (char c : text) {
    if (c < 63 || c > 126) throw InputError("graph6: byte outside 63..126");
  }
  std::size_t pos = 0;
  int n = 0;
  if (text[0] != 126) {
    n = text[0] - 63;
    pos = 1;
  } else {
    if (text.size() < 4 || text[1] == 126) {
      throw InputError("graph6: orders above 258047 are not supported");
    }
    n = ((text[1] - 63) << 12) | ((text[2] - 63) << 6) | (text[3] - 63);
    pos = 4;
  }
  if (n > kMaxVertices) throw InputError("graph6: order " + std::to_string(n) + " exceeds 128");

  const std::size_t bits = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - (n > 0)) / 2;
  const std::size_t bytes = (bits + 5) / 6;
  if (text.size() - pos != bytes) {
    throw InputError("graph6: expected " + std::to_string(bytes) + " data bytes, got " +
                     std::to_string(text.size() - pos));
  }
  Graph g(n);
  std::size_t k = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i, ++k) {
      const int byte = text[pos + k / 6] - 63;
      if ((byte >> (5 - static_cast<int>(k % 6))) & 1) g.add_edge(i, j);
    }
  }
  for (; k < bytes * 6; ++k) {
    const int byte = text[pos + k / 6] - 63;
    if ((byte >> (5 - static_cast<int>(k % 6))) & 1) throw InputError("graph6: nonzero padding");
  }
  return g;
}

inline std::string to_graph6(const Graph& g) {
  const int n = g.order();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else {
    out.push_back(static_cast<char>(126));
    out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
    out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
    out.push_back(static_cast<char>((n & 63) + 63));
  }
  int acc = 0;
  int filled = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  return out;
}

}  // namespace esos

#endif  // ESOS_GRAPH_HPP
