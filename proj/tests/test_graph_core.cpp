#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "esos/enumerate.hpp"
#include "esos/graph.hpp"
#include "esos/graph_core.hpp"

using namespace esos;

namespace {

// Test-side oracles.
std::pair<int, int> slow_edge_counts(const Graph& g, const VertexSet& s) {
  int in = 0, out = 0;
  for (auto [a, b] : g.edges()) {
    const bool ia = s.contains(a), ib = s.contains(b);
    if (ia && ib) ++in;
    else if (ia || ib) ++out;
  }
  return {in, out};
}

std::optional<VertexSet> slow_violation(const Graph& g, int k) {
  const int n = g.order();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    VertexSet s;
    for (int v = 0; v < n; ++v)
      if (mask >> v & 1) s.insert(v);
    auto [in, out] = slow_edge_counts(g, s);
    if (2 * (in + out) <= (k - 1) * s.size()) return s;
  }
  return std::nullopt;
}

Graph k_bipartite(int a, int b) {
  Graph g(a + b);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
  return g;
}

int count_classes_by_permutation(int n) {
  const int pairs = n * (n - 1) / 2;
  std::vector<std::pair<int, int>> idx;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) idx.emplace_back(i, j);
  std::set<std::uint32_t> seen;
  int classes = 0;
  for (std::uint32_t code = 0; code < (1u << pairs); ++code) {
    if (seen.count(code)) continue;
    ++classes;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::uint32_t image = 0;
      for (int e = 0; e < pairs; ++e) {
        if (!(code >> e & 1)) continue;
        int a = perm[idx[e].first], b = perm[idx[e].second];
        if (a > b) std::swap(a, b);
        const auto pos = std::find(idx.begin(), idx.end(), std::make_pair(a, b)) - idx.begin();
        image |= 1u << pos;
      }
      seen.insert(image);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return classes;
}

}  // namespace

TEST(VertexSet, BasicOperations) {
  VertexSet s{1, 5, 70, 127};
  EXPECT_EQ(s.size(), 4);
  EXPECT_TRUE(s.contains(70));
  EXPECT_EQ(s.first(), 1);
  EXPECT_EQ(s.last(), 127);
  EXPECT_EQ((s - VertexSet{5}).size(), 3);
  EXPECT_TRUE((VertexSet{1, 5}.subset_of(s)));
  EXPECT_FALSE(s.intersects(VertexSet{2, 3}));
  EXPECT_EQ(VertexSet::range(66).size(), 66);
  EXPECT_EQ(s.to_vector(), (std::vector<Vertex>{1, 5, 70, 127}));
}

TEST(Graph6, KnownStrings) {
  EXPECT_EQ(to_graph6(complete_graph(3)), "Bw");
  EXPECT_EQ(to_graph6(complete_graph(4)), "C~");
  EXPECT_EQ(to_graph6(Graph(5)), "D??");
  const Graph petersen = parse_graph6("IheA@GUAo");
  EXPECT_EQ(petersen.order(), 10);
  EXPECT_EQ(petersen.edge_count(), 15);
  for (Vertex v = 0; v < 10; ++v) EXPECT_EQ(petersen.degree(v), 3);
}

TEST(Graph6, RoundTripLargeOrder) {
  Graph g(70);
  for (int i = 0; i + 1 < 70; ++i) g.add_edge(i, i + 1);
  g.add_edge(0, 69);
  const std::string s = to_graph6(g);
  EXPECT_EQ(s[0], '~');
  const Graph h = parse_graph6(s);
  EXPECT_EQ(h.edges(), g.edges());
}

TEST(Graph6, RejectsMalformed) {
  EXPECT_THROW(parse_graph6(""), InputError);
  EXPECT_THROW(parse_graph6("C"), InputError);
  EXPECT_THROW(parse_graph6("C~~"), InputError);
  EXPECT_THROW(parse_graph6("!!"), InputError);
}

TEST(EdgeCounts, Examples) {
  const Graph k3 = complete_graph(3);
  EXPECT_EQ(edge_counts(k3, k3.vertices()).inside, 3);
  EXPECT_EQ(edge_counts(k3, k3.vertices()).boundary, 0);
  const Graph star = star_graph(3);
  EXPECT_EQ(edge_counts(star, VertexSet{0}).inside, 0);
  EXPECT_EQ(edge_counts(star, VertexSet{0}).boundary, 3);
  const Graph c4 = cycle_graph(4);
  const auto ec = edge_counts(c4, VertexSet{0, 1});
  const auto slow = slow_edge_counts(c4, VertexSet{0, 1});
  EXPECT_EQ(ec.inside, slow.first);
  EXPECT_EQ(ec.boundary, slow.second);
  EXPECT_EQ(ec.inside, 1);
  EXPECT_EQ(ec.boundary, 2);
  EXPECT_THROW(edge_counts(c4, VertexSet{4}), InputError);
}

TEST(EdgesBetween, Examples) {
  EXPECT_EQ(edges_between(complete_graph(4), VertexSet{0, 1}, VertexSet{2, 3}), 4);
  EXPECT_EQ(edges_between(complete_graph(4), VertexSet{0, 1}, VertexSet{}), 0);
  EXPECT_EQ(edges_between(cycle_graph(4), VertexSet{0}, VertexSet{1, 2}), 1);
}

TEST(Density, Examples) {
  EXPECT_TRUE(satisfies_density(complete_graph(4), 2));
  EXPECT_TRUE(satisfies_density(path_graph(3), 2));
  EXPECT_FALSE(satisfies_density(Graph(5), 1));
}

TEST(LocalCondition, Examples) {
  EXPECT_FALSE(satisfies_local_condition(complete_graph(5), 4).has_value());
  EXPECT_FALSE(slow_violation(complete_graph(5), 4).has_value());
  const auto v = satisfies_local_condition(star_graph(3), 3);
  ASSERT_TRUE(v.has_value());
  auto [in, out] = slow_edge_counts(star_graph(3), *v);
  EXPECT_LE(2 * (in + out), 2 * v->size());
  const auto single = satisfies_local_condition(Graph(1), 1);
  ASSERT_TRUE(single.has_value());
  EXPECT_EQ(*single, VertexSet{0});
}

TEST(LocalCondition, MatchesSubsetOracleOnSmallGraphs) {
  for (int n = 1; n <= 5; ++n)
    for (const Graph& g : enumerate_graphs(n))
      for (int k = 1; k <= n; ++k) {
        const auto fast = satisfies_local_condition(g, k);
        const auto slow = slow_violation(g, k);
        ASSERT_EQ(fast.has_value(), slow.has_value()) << to_graph6(g) << " k=" << k;
        if (fast) {
          auto [in, out] = slow_edge_counts(g, *fast);
          EXPECT_LE(2 * (in + out), (k - 1) * fast->size());
        }
      }
}

TEST(LocalCondition, CapIsEnforced) {
  EXPECT_THROW(satisfies_local_condition(Graph(25), 2), CapabilityError);
}

TEST(HeavyVertex, Examples) {
  EXPECT_EQ(heavy_vertex(star_graph(3), VertexSet{0}, 3), 0);
  const Graph k4 = complete_graph(4);
  const auto h = heavy_vertex(k4, k4.vertices(), 3);
  ASSERT_TRUE(h.has_value());
  EXPECT_GE(2 * k4.degree(*h) - edges_to(k4, *h, k4.vertices()), 3);
  const Graph c5 = cycle_graph(5);
  EXPECT_TRUE(heavy_vertex(c5, c5.vertices(), 2).has_value());
  EXPECT_FALSE(heavy_vertex(c5, c5.vertices(), 3).has_value());
}

TEST(HCertificates, Recognition) {
  const auto c4 = recognize_H(cycle_graph(4));
  ASSERT_TRUE(c4.has_value());
  EXPECT_EQ(c4->x, (VertexSet{0, 2}));
  EXPECT_EQ(c4->y, (VertexSet{1, 3}));
  const auto star = recognize_H(star_graph(3));
  ASSERT_TRUE(star.has_value());
  EXPECT_EQ(star->x, (VertexSet{1, 2, 3}));
  EXPECT_EQ(star->y, VertexSet{0});
  EXPECT_FALSE(recognize_H(path_graph(4)).has_value());
}

TEST(HCertificates, Verification) {
  const Graph c4 = cycle_graph(4);
  EXPECT_TRUE(verify_H_certificate(c4, {VertexSet{0, 2}, VertexSet{1, 3}}));
  EXPECT_FALSE(verify_H_certificate(c4, {VertexSet{0, 1}, VertexSet{2, 3}}));
  EXPECT_TRUE(verify_H_certificate(c4, {VertexSet{}, VertexSet{1}}));
}

TEST(HCertificates, SubgraphSearch) {
  const auto c = find_H_subgraph(cycle_graph(4), 2, 2, 0);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->support(), cycle_graph(4).vertices());
  EXPECT_TRUE(verify_H_certificate(cycle_graph(4), *c));
  EXPECT_FALSE(find_H_subgraph(complete_graph(3), 2, 2, 0).has_value());

  Graph g = k_bipartite(3, 2);
  Graph h(6);
  for (auto [a, b] : g.edges()) h.add_edge(a, b);
  const auto k23 = find_H_subgraph(h, 3, 2, 1);
  ASSERT_TRUE(k23.has_value());
  EXPECT_EQ(k23->x, (VertexSet{0, 1, 2}));
  EXPECT_EQ(k23->y, (VertexSet{3, 4}));
}

TEST(HCertificates, SubgraphSearchMatchesBruteForce) {
  for (int n = 2; n <= 6; ++n)
    for (const Graph& g : enumerate_graphs(n))
      for (int a = 1; a <= 3; ++a)
        for (int b = 0; b <= 2 && a + b <= n; ++b)
          for (Vertex u = 0; u < n; ++u) {
            bool slow = false;
            for (std::uint32_t xm = 1; xm < (1u << n) && !slow; ++xm) {
              if (std::popcount(xm) != a) continue;
              for (std::uint32_t ym = 0; ym < (1u << n) && !slow; ++ym) {
                if (std::popcount(ym) != b || (xm & ym) || !((xm | ym) >> u & 1)) continue;
                HCertificate c;
                for (int v = 0; v < n; ++v) {
                  if (xm >> v & 1) c.x.insert(v);
                  if (ym >> v & 1) c.y.insert(v);
                }
                slow = verify_H_certificate(g, c);
              }
            }
            const auto fast = find_H_subgraph(g, a, b, u);
            ASSERT_EQ(fast.has_value(), slow) << to_graph6(g) << " a=" << a << " b=" << b << " u=" << u;
            if (fast) {
              EXPECT_TRUE(verify_H_certificate(g, *fast));
              EXPECT_EQ(fast->a(), a);
              EXPECT_EQ(fast->b(), b);
              EXPECT_TRUE(fast->support().contains(u));
            }
          }
}

TEST(Enumeration, ClassCounts) {
  const std::vector<std::size_t> expected{1, 1, 2, 4, 11, 34, 156, 1044};
  for (int n = 0; n <= 7; ++n) EXPECT_EQ(enumerate_graphs(n).size(), expected[n]) << n;
  EXPECT_THROW(enumerate_graphs(8), CapabilityError);
  EXPECT_THROW(enumerate_graphs(-1), InputError);
}

TEST(Enumeration, CountsMatchPermutationOracle) {
  for (int n = 1; n <= 5; ++n)
    EXPECT_EQ(static_cast<int>(enumerate_graphs(n).size()), count_classes_by_permutation(n)) << n;
}

TEST(Enumeration, RepresentativesAreCanonical) {
  for (const Graph& g : enumerate_graphs(6)) {
    const CanonicalForm cf = canonical_form(g);
    EXPECT_EQ(relabel(g, cf.order).edges(), g.edges());
  }
}
