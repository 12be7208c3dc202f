#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "esos/esos.hpp"
#include "esos/json_io.hpp"

using namespace esos;

namespace {

Graph random_graph(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (coin(rng)) g.add_edge(a, b);
  return g;
}

Graph permuted(const Graph& g, const std::vector<Vertex>& perm) {
  Graph h(g.order());
  for (auto [a, b] : g.edges()) h.add_edge(perm[a], perm[b]);
  return h;
}

VertexSet random_subset(std::mt19937_64& rng, int n) {
  VertexSet s;
  for (Vertex v = 0; v < n; ++v)
    if (rng() & 1) s.insert(v);
  return s;
}

}  // namespace

TEST(Properties, Graph6RoundTrip) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 300; ++i) {
    const Graph g = random_graph(rng, 1 + static_cast<int>(rng() % 40), 0.3);
    const Graph h = parse_graph6(to_graph6(g));
    EXPECT_EQ(h.order(), g.order());
    EXPECT_EQ(h.edges(), g.edges());
  }
}

TEST(Properties, CanonicalFormIgnoresLabels) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 300; ++i) {
    const int n = 1 + static_cast<int>(rng() % 7);
    const Graph g = random_graph(rng, n, 0.5);
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    EXPECT_EQ(canonical_form(g).code, canonical_form(permuted(g, perm)).code) << to_graph6(g);
  }
}

TEST(Properties, DeletionIdentity) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const int n = 2 + static_cast<int>(rng() % 20);
    const Graph g = random_graph(rng, n, 0.4);
    const VertexSet s = random_subset(rng, n);
    const EdgeCounts c = edge_counts(g, s);
    const Graph rest = g.induced(g.vertices() - s);
    EXPECT_EQ(rest.edge_count(), g.edge_count() - c.inside - c.boundary);
  }
}

// Deleting a violating set keeps a dense graph dense.
TEST(Properties, ReductionPreservesDensity) {
  for (int n = 2; n <= 6; ++n)
    for (const Graph& g : enumerate_graphs(n))
      for (int k = 1; k < n; ++k) {
        if (!satisfies_density(g, k)) continue;
        const auto s = satisfies_local_condition(g, k);
        if (!s) {
          EXPECT_TRUE(heavy_vertex(g, g.vertices(), k).has_value()) << to_graph6(g) << " k=" << k;
          continue;
        }
        ASSERT_FALSE(s->empty());
        ASSERT_LT(s->size(), n);
        EXPECT_TRUE(satisfies_density(g.induced(g.vertices() - *s), k)) << to_graph6(g) << " k=" << k;
      }
}

TEST(Properties, PartitionsVerify) {
  for (int n = 1; n <= 6; ++n)
    for (const Graph& g : enumerate_graphs(n))
      for (const HCertificate& c : H_partitions(g, g.vertices())) {
        EXPECT_TRUE(verify_H_certificate(g, c));
        EXPECT_EQ(c.support(), g.vertices());
      }
}

TEST(Properties, EmbeddingsUseKPlusOneVertices) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const Graph g = random_graph(rng, 4 + static_cast<int>(rng() % 7), 0.6);
    const auto spiders = enumerate_spiders(1 + static_cast<int>(rng() % 5));
    const Spider& t = spiders[rng() % spiders.size()];
    const auto e = embed_bruteforce(g, t);
    if (!e) continue;
    EXPECT_TRUE(verify_embedding(g, t, *e));
    EXPECT_EQ(e->vertex_set().size(), t.edges() + 1);
    for (std::size_t l = 0; l < e->legs.size(); ++l) EXPECT_EQ(e->legs[l].length(), t.legs()[l]);
  }
}

TEST(Properties, RotationsAreExactReroutes) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const Graph g = random_graph(rng, 4 + static_cast<int>(rng() % 8), 0.5);
    const UPath p = longest_u_path(g, 0, VertexSet{});
    if (p.length() == 0) continue;
    const VertexSet exact = reroute_ends(g, p, RerouteMode::exact);
    EXPECT_TRUE(exact.contains(p.end()));
    EXPECT_TRUE(reroute_ends(g, p, RerouteMode::rotation).subset_of(exact));
    EXPECT_TRUE(check_lemma1_bound(g, p));
  }
}

// Every miss at u under the hypotheses is an all-even spider with a certificate,
// except paths, which can miss u with no certificate of that shape.
TEST(Properties, DichotomyForSpidersWithSeveralLegs) {
  const Report r = dichotomy_check(7);
  EXPECT_TRUE(r.consistent());
  EXPECT_EQ(r.tallies.count("disagreements"), 0u);
  EXPECT_EQ(r.tallies.count("invalid_certificates"), 0u);
  EXPECT_EQ(r.tallies.count("invalid_embeddings"), 0u);
  for (const Failure& f : r.failures) EXPECT_EQ(Spider::parse(f.spider).leg_count(), 1) << f.graph6;
}

TEST(Properties, CertificatesOnlyForAllEvenSpiders) {
  for (int n = 3; n <= 6; ++n)
    for (const Graph& g : enumerate_graphs(n))
      for (int k = 1; k < n; ++k) {
        if (satisfies_local_condition(g, k)) continue;
        for (Vertex u = 0; u < n; ++u) {
          if (g.degree(u) < k) continue;
          for (const Spider& t : enumerate_spiders(k)) {
            EmbedOutcome o;
            try {
              o = embed_constructive(g, t, u);
            } catch (const SoundnessError&) {
              EXPECT_EQ(t.leg_count(), 1);
              continue;
            }
            EXPECT_NE(o.embedded(), o.certified.has_value());
            if (o.embedded()) {
              EXPECT_TRUE(verify_embedding(g, t, *o.embedding));
              EXPECT_EQ(o.embedding->center, u);
            } else {
              EXPECT_TRUE(in_T0_family(t));
              EXPECT_FALSE(embed_bruteforce(g, t, u));
              EXPECT_TRUE(verify_H_certificate(g, o.certified->cert));
              EXPECT_EQ(o.certified->cert.b(), k / 2);
            }
          }
        }
      }
}

TEST(Properties, LemmaWitnessesVerify) {
  for (LemmaId id : kAllLemmas) {
    std::uint64_t seen = 0;
    for (int n : {5, 7, 9}) {
      for (const LemmaInstance& in : sample_instances(id, n, 300, 77 + n)) {
        const CaseOutcome out = analyze(in);
        EXPECT_TRUE(verify_case_outcome(in, out)) << lemma_name(id) << " " << to_graph6(in.host);
        ++seen;
      }
    }
    EXPECT_GT(seen, 0u) << lemma_name(id);
  }
}

TEST(Properties, ReportsAreReproducible) {
  EXPECT_EQ(to_json(random_agreement(100, 9)).dump(), to_json(random_agreement(100, 9)).dump());
  EXPECT_EQ(to_json(run_lemma_suite(LemmaId::PQw, 500, 9)).dump(),
            to_json(run_lemma_suite(LemmaId::PQw, 500, 9)).dump());
  EXPECT_EQ(to_json(dichotomy_check(5)).dump(), to_json(dichotomy_check(5)).dump());
}
