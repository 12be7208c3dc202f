#include <gtest/gtest.h>

#include <functional>

#include "esos/embedder.hpp"
#include "esos/enumerate.hpp"

using namespace esos;

namespace {

// Embeddability by injective mapping of the spider's vertices in leg
// order: vertex 0 is the center, each later vertex sits next to its parent.
bool oracle_embeds(const Graph& g, const Spider& t, std::optional<Vertex> at) {
  std::vector<int> parent{-1};
  for (int len : t.legs()) {
    int prev = 0;
    for (int i = 0; i < len; ++i) {
      parent.push_back(prev);
      prev = static_cast<int>(parent.size()) - 1;
    }
  }
  const int m = static_cast<int>(parent.size());
  std::vector<Vertex> image(m, -1);
  std::vector<bool> used(g.order(), false);
  std::function<bool(int)> place = [&](int i) {
    if (i == m) return true;
    for (Vertex v = 0; v < g.order(); ++v) {
      if (used[v] || !g.adjacent(image[parent[i]], v)) continue;
      used[v] = true;
      image[i] = v;
      if (place(i + 1)) return true;
      used[v] = false;
    }
    return false;
  };
  for (Vertex c = 0; c < g.order(); ++c) {
    if (at && c != *at) continue;
    used.assign(g.order(), false);
    used[c] = true;
    image[0] = c;
    if (place(1)) return true;
  }
  return false;
}

Graph h32() {
  Graph h(5);
  for (Vertex x = 0; x < 3; ++x) {
    h.add_edge(x, 3);
    h.add_edge(x, 4);
  }
  h.add_edge(3, 4);
  return h;
}

}  // namespace

TEST(Bruteforce, Examples) {
  const auto e = embed_bruteforce(complete_graph(5), Spider({2, 2}), 0);
  ASSERT_TRUE(e);
  EXPECT_EQ(e->center, 0);
  EXPECT_TRUE(verify_embedding(complete_graph(5), Spider({2, 2}), *e));

  const auto s = embed_bruteforce(star_graph(3), Spider({1, 1, 1}), 0);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->vertex_set(), (VertexSet{0, 1, 2, 3}));

  EXPECT_FALSE(embed_bruteforce(h32(), Spider({2, 2}), 3));
  EXPECT_FALSE(embed_bruteforce(h32(), Spider({2, 2}), 4));
  EXPECT_TRUE(embed_bruteforce(h32(), Spider({2, 2}), 0));
  EXPECT_THROW(embed_bruteforce(h32(), Spider({1}), 9), InputError);
}

TEST(Bruteforce, IsDeterministic) {
  const Graph g = parse_graph6("FJaNw");
  for (const Spider& t : enumerate_spiders(4)) EXPECT_EQ(embed_bruteforce(g, t), embed_bruteforce(g, t));
}

TEST(Bruteforce, MatchesMappingOracle) {
  for (int n = 1; n <= 6; ++n)
    for (const Graph& g : enumerate_graphs(n))
      for (int k = 1; k < n; ++k)
        for (const Spider& t : enumerate_spiders(k)) {
          for (Vertex u = 0; u < n; ++u) {
            const auto e = embed_bruteforce(g, t, u);
            ASSERT_EQ(e.has_value(), oracle_embeds(g, t, u)) << to_graph6(g) << " " << t.to_string() << " u=" << u;
            if (e) {
              EXPECT_TRUE(verify_embedding(g, t, *e));
            }
          }
          EXPECT_EQ(embed_bruteforce(g, t).has_value(), oracle_embeds(g, t, std::nullopt));
        }
}

TEST(Bruteforce, BudgetIsEnforced) {
  EXPECT_THROW(embed_bruteforce(complete_graph(10), Spider({3, 3, 3}), 0, 5), CapabilityError);
}

TEST(VerifyEmbedding, RejectsMutations) {
  const Graph g = complete_graph(5);
  const Spider t({2, 2});
  const Embedding good = *embed_bruteforce(g, t, 0);
  EXPECT_TRUE(verify_embedding(g, t, good));

  Embedding share = good;
  share.legs[1] = UPath({0, good.legs[0].sequence()[1], 4});
  EXPECT_FALSE(verify_embedding(g, t, share));

  const Graph c = cycle_graph(5);
  const Embedding ring{0, t, {UPath({0, 1, 2}), UPath({0, 4, 3})}};
  EXPECT_TRUE(verify_embedding(c, t, ring));
  Embedding jump = ring;
  jump.legs[1] = UPath({0, 3, 4});
  EXPECT_FALSE(verify_embedding(c, t, jump));

  Embedding shorter = ring;
  shorter.legs[1] = UPath({0, 4});
  EXPECT_FALSE(verify_embedding(c, t, shorter));
  EXPECT_FALSE(verify_embedding(c, Spider({3, 1}), ring));
  Embedding off{1, t, ring.legs};
  EXPECT_FALSE(verify_embedding(c, t, off));
}

TEST(Constructive, CompleteGraph) {
  const EmbedOutcome o = embed_constructive(complete_graph(5), Spider({2, 2}), 0);
  ASSERT_TRUE(o.embedded());
  EXPECT_TRUE(verify_embedding(complete_graph(5), Spider({2, 2}), *o.embedding));
  EXPECT_EQ(o.embedding->center, 0);
}

TEST(Constructive, CertifiesTheExtremalHost) {
  ConstructiveOptions opt;
  opt.require_local_condition = false;
  const Graph h = h32();
  const EmbedOutcome o = embed_constructive(h, Spider({2, 2}), 3, opt);
  ASSERT_FALSE(o.embedded());
  ASSERT_TRUE(o.certified);
  EXPECT_EQ(o.certified->kind, CertificateKind::LocalH);
  EXPECT_TRUE(o.certified->t0_member);
  EXPECT_EQ(o.certified->cert.x, (VertexSet{0, 1, 2}));
  EXPECT_EQ(o.certified->cert.y, (VertexSet{3, 4}));
  EXPECT_TRUE(verify_H_certificate(h, o.certified->cert));
}

TEST(Constructive, PreconditionsAreChecked) {
  EXPECT_THROW(embed_constructive(h32(), Spider({2, 2}), 3), InputError);
  EXPECT_THROW(embed_constructive(h32(), Spider({2, 2}), 0), InputError);
  EXPECT_THROW(embed_constructive(complete_graph(4), Spider({1}), 7), InputError);
}

TEST(Constructive, OddLegSpiderAlwaysEmbeds) {
  const Spider t({3, 1});
  int checked = 0;
  for (int n = 5; n <= 7; ++n)
    for (const Graph& g : enumerate_graphs(n)) {
      if (satisfies_local_condition(g, 4)) continue;
      for (Vertex u = 0; u < n; ++u) {
        if (g.degree(u) < 4) continue;
        const EmbedOutcome o = embed_constructive(g, t, u);
        ASSERT_TRUE(o.embedded()) << to_graph6(g) << " u=" << u;
        EXPECT_TRUE(verify_embedding(g, t, *o.embedding));
        ++checked;
      }
    }
  EXPECT_GT(checked, 0);
}

TEST(Constructive, IsDeterministic) {
  const Graph g = parse_graph6("FJaNw");
  for (const Spider& t : enumerate_spiders(3)) {
    for (Vertex u = 0; u < g.order(); ++u) {
      if (g.degree(u) < 3) continue;
      try {
        const EmbedOutcome a = embed_constructive(g, t, u);
        const EmbedOutcome b = embed_constructive(g, t, u);
        EXPECT_EQ(a.embedding, b.embedding);
        EXPECT_EQ(a.phase, b.phase);
      } catch (const SoundnessError&) {
      }
    }
  }
}

// Bowtie: two triangles sharing vertex 4. The local condition holds for k=3 and
// d(4)=4, yet the path of length 3 has no copy starting at 4.
TEST(Constructive, BowtieHasNoPathFromTheCenter) {
  const Graph g = parse_graph6("DK{");
  ASSERT_EQ(g.edge_count(), 6);
  EXPECT_FALSE(satisfies_local_condition(g, 3).has_value());
  EXPECT_EQ(g.degree(4), 4);
  EXPECT_FALSE(embed_bruteforce(g, Spider({3}), 4));
  EXPECT_TRUE(embed_bruteforce(g, Spider({2, 1}), 4));
  EXPECT_TRUE(embed_bruteforce(g, Spider({3})));
  EXPECT_THROW(embed_constructive(g, Spider({3}), 4), SoundnessError);
  EXPECT_TRUE(embed_constructive(g, Spider({2, 1}), 4).embedded());
}

TEST(EmbedIntoH, Examples) {
  const Graph h = h32();
  const HCertificate c{VertexSet{0, 1, 2}, VertexSet{3, 4}};
  const auto e = embed_into_H(h, c, Spider({2, 2}), 0);
  ASSERT_TRUE(e);
  EXPECT_EQ(e->legs[0].sequence(), (std::vector<Vertex>{0, 3, 1}));
  EXPECT_EQ(e->legs[1].sequence(), (std::vector<Vertex>{0, 4, 2}));
  EXPECT_FALSE(embed_into_H(h, c, Spider({2, 2}), 3));

  Graph k21(3);
  k21.add_edge(0, 2);
  k21.add_edge(1, 2);
  const HCertificate one{VertexSet{0, 1}, VertexSet{2}};
  const auto leg = embed_into_H(k21, one, Spider({2}), 0);
  ASSERT_TRUE(leg);
  EXPECT_EQ(leg->legs[0].sequence(), (std::vector<Vertex>{0, 2, 1}));
  EXPECT_FALSE(embed_into_H(k21, one, Spider({4}), 0));

  EXPECT_THROW(embed_into_H(h, HCertificate{VertexSet{0, 3}, VertexSet{1}}, Spider({2}), 0), InputError);
  EXPECT_THROW(embed_into_H(h, c, Spider({3, 1}), 0), InputError);
}

TEST(Theorem2, CompleteGraph) {
  const Report r = theorem2_check(complete_graph(4), 3);
  EXPECT_EQ(r.tests, 3u);
  EXPECT_EQ(r.embeddings, 3u);
  EXPECT_TRUE(r.clean());
  EXPECT_THROW(theorem2_check(path_graph(4), 3), InputError);
  EXPECT_THROW(theorem2_check(complete_graph(4), 0), InputError);
}

TEST(Theorem2, EveryDenseGraphOnSixVertices) {
  int checked = 0;
  for (const Graph& g : enumerate_graphs(6))
    for (int k = 1; k < 6; ++k) {
      if (!satisfies_density(g, k)) continue;
      const Report r = theorem2_check(g, k);
      EXPECT_TRUE(r.clean()) << to_graph6(g) << " k=" << k;
      EXPECT_EQ(r.tests, enumerate_spiders(k).size());
      for (const Spider& t : enumerate_spiders(k)) EXPECT_TRUE(oracle_embeds(g, t, std::nullopt));
      ++checked;
    }
  EXPECT_GT(checked, 0);
}

// Both reduce to the bowtie, where the path has no copy at the chosen vertex.
TEST(Theorem2, FallsBackWhenTheCenterFails) {
  for (const char* s : {"E@Rw", "EGdw"}) {
    const Graph g = parse_graph6(s);
    const Report r = theorem2_check(g, 3);
    EXPECT_TRUE(r.clean()) << s;
    EXPECT_EQ(r.tallies.at("reductions"), 1u);
    EXPECT_EQ(r.tallies.at("unexplained"), 1u);
    EXPECT_EQ(r.errors, 1u);
  }
}
