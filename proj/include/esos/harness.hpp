#ifndef ESOS_HARNESS_HPP
#define ESOS_HARNESS_HPP

#include <algorithm>
#include <chrono>
#include <functional>
#include <istream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "esos/embedder.hpp"
#include "esos/enumerate.hpp"
#include "esos/errors.hpp"
#include "esos/graph.hpp"
#include "esos/graph_core.hpp"
#include "esos/lemma_engine.hpp"
#include "esos/path_surgery.hpp"
#include "esos/report.hpp"
#include "esos/spider.hpp"

namespace esos {

/// A source of graphs: the built-in classes for n <= n_max, or graph6 lines.
using GraphVisitor = std::function<void(const Graph&)>;

inline void for_each_enumerated(int n_min, int n_max, const GraphVisitor& f) {
  for (int n = std::max(n_min, 0); n <= n_max; ++n)
    for (const Graph& g : enumerate_graphs(n)) f(g);
}

/// Reads one graph6 string per line. Blank lines and lines starting with '#' are skipped.
inline void for_each_graph6(std::istream& in, const GraphVisitor& f) {
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    f(parse_graph6(line));
  }
}

inline void normalize(Report& r) { std::sort(r.failures.begin(), r.failures.end()); }

namespace detail {

inline void widen_scope(Report& r, int n, int k) {
  if (r.graphs == 0 || n < r.n_min) r.n_min = n;
  if (r.graphs == 0 || n > r.n_max) r.n_max = n;
  if (k > 0) {
    if (r.k_min == 0 || k < r.k_min) r.k_min = k;
    if (k > r.k_max) r.k_max = k;
  }
}

inline std::string path_string(const UPath& p) {
  std::string s;
  for (Vertex v : p.sequence()) {
    if (!s.empty()) s += '-';
    s += std::to_string(v);
  }
  return s;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Conjecture at desk scale

struct VerifyOptions {
  /// Fault injection: test every k < n regardless of the density condition.
  bool skip_density = false;
  std::uint64_t budget = default_budget();
};

/// Every k with 2e(G) > (k-1)n and every spider with k edges must embed somewhere.
inline void verify_graph(const Graph& g, Report& r, const VerifyOptions& opt = {}) {
  const int n = g.order();
  int k_top = 0;
  for (int k = 1; k < n; ++k)
    if (opt.skip_density || satisfies_density(g, k)) k_top = k;
  detail::widen_scope(r, n, k_top > 0 ? 1 : 0);
  if (k_top > r.k_max) r.k_max = k_top;
  ++r.graphs;
  for (int k = 1; k <= k_top; ++k) {
    if (!opt.skip_density && !satisfies_density(g, k)) continue;
    for (const Spider& t : enumerate_spiders(k)) {
      ++r.tests;
      if (embed_bruteforce(g, t, std::nullopt, opt.budget)) {
        ++r.embeddings;
      } else {
        ++r.errors;
        r.failures.push_back({to_graph6(g), k, t.to_string(), -1, "spider does not embed"});
      }
    }
  }
}

inline Report verify_conjecture_spiders(int n_max, const VerifyOptions& opt = {}) {
  if (n_max > kEnumerationCap) {
    throw CapabilityError("verify_conjecture_spiders: built-in enumeration stops at n = " +
                          std::to_string(kEnumerationCap) + "; stream graph6 instead");
  }
  detail::Stopwatch clock;
  Report r;
  r.scope = "conjecture";
  for_each_enumerated(1, n_max, [&](const Graph& g) { verify_graph(g, r, opt); });
  normalize(r);
  r.seconds = clock.seconds();
  return r;
}

inline Report verify_conjecture_spiders(std::istream& in, const VerifyOptions& opt = {}) {
  detail::Stopwatch clock;
  Report r;
  r.scope = "conjecture";
  for_each_graph6(in, [&](const Graph& g) { verify_graph(g, r, opt); });
  normalize(r);
  r.seconds = clock.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Embed-or-certify against the oracle

/// Every (k, u, T) on G with the local condition, d(u) >= k, and |T| = k.
/// An Embedded outcome must match the oracle. A Certified outcome must have T in
/// the all-even family, a verified certificate, and no oracle embedding. A
/// non-embedding the embedder cannot explain is a failure.
inline void dichotomy_graph(const Graph& g, Report& r, const ConstructiveOptions& opt = {}) {
  const int n = g.order();
  ++r.graphs;
  for (int k = 1; k < n; ++k) {
    if (satisfies_local_condition(g, k)) continue;
    for (Vertex u = 0; u < n; ++u) {
      if (g.degree(u) < k) continue;
      detail::widen_scope(r, n, k);
      for (const Spider& t : enumerate_spiders(k)) {
        ++r.tests;
        const bool oracle = embed_bruteforce(g, t, u, opt.budget).has_value();
        auto fail = [&](const std::string& why) {
          r.failures.push_back({to_graph6(g), k, t.to_string(), u, why});
        };
        try {
          const EmbedOutcome o = embed_constructive(g, t, u, opt);
          if (o.embedded()) {
            ++r.embeddings;
            r.tally("phase." + o.phase);
            if (!verify_embedding(g, t, *o.embedding) || o.embedding->center != u) {
              r.tally("invalid_embeddings");
              fail("embedding fails verification");
            }
            if (!oracle) {
              r.tally("disagreements");
              fail("embedded where the oracle finds nothing");
            }
          } else {
            ++r.certificates;
            const Certified& c = *o.certified;
            r.tally(std::string("certified.") + certificate_kind_name(c.kind));
            const bool shape = c.kind == CertificateKind::LocalH
                                   ? c.cert.b() == k / 2 && c.cert.a() >= k / 2 + 1 && c.cert.support().contains(u)
                                   : c.cert.b() == k / 2 && c.cert.support() == g.vertices();
            if (!in_T0_family(t) || !verify_H_certificate(g, c.cert) || !shape) {
              r.tally("invalid_certificates");
              fail("certificate fails verification");
            }
            if (oracle) {
              r.tally("disagreements");
              fail("certified although the oracle embeds");
            }
          }
        } catch (const SoundnessError& e) {
          ++r.errors;
          r.tally(oracle ? "disagreements" : "unexplained");
          fail(e.what());
        }
      }
    }
  }
}

inline Report dichotomy_check(int n_max, const ConstructiveOptions& opt = {}) {
  if (n_max > kEnumerationCap) {
    throw CapabilityError("dichotomy_check: built-in enumeration stops at n = " + std::to_string(kEnumerationCap));
  }
  detail::Stopwatch clock;
  Report r;
  r.scope = "dichotomy";
  for_each_enumerated(1, n_max, [&](const Graph& g) { dichotomy_graph(g, r, opt); });
  normalize(r);
  r.seconds = clock.seconds();
  return r;
}

struct RandomTriple {
  Graph g;
  int k = 0;
  Spider t;
  Vertex u = -1;
};

/// Seeded random (G, T, u) with 4 <= n <= n_max, the local condition for k, and
/// d(u) >= k. Hosts are dense random graphs, sometimes with a planted H-block.
inline std::vector<RandomTriple> random_triples(int count, std::uint64_t seed, int n_max = 10) {
  if (n_max < 4 || n_max > 12) throw InputError("random_triples: n_max must be in 4..12");
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 0x51ED);
  std::vector<RandomTriple> out;
  while (static_cast<int>(out.size()) < count) {
    const int n = 4 + static_cast<int>(detail::draw(rng, static_cast<std::uint64_t>(n_max - 3)));
    const Graph g = detail::random_host(n, rng);
    int max_deg = 0;
    for (Vertex v = 0; v < n; ++v) max_deg = std::max(max_deg, g.degree(v));
    if (max_deg < 1) continue;
    const int k = 1 + static_cast<int>(detail::draw(rng, static_cast<std::uint64_t>(std::min(max_deg, n - 1))));
    if (satisfies_local_condition(g, k)) continue;
    std::vector<Vertex> heavy;
    for (Vertex v = 0; v < n; ++v)
      if (g.degree(v) >= k) heavy.push_back(v);
    if (heavy.empty()) continue;
    const auto spiders = enumerate_spiders(k);
    out.push_back({g, k, detail::pick(rng, spiders), detail::pick(rng, heavy)});
  }
  return out;
}

/// Agreement of embed_constructive with the oracle on embeddability at u.
inline Report random_agreement(int count, std::uint64_t seed, int n_max = 10,
                               const ConstructiveOptions& opt = {}) {
  detail::Stopwatch clock;
  Report r;
  r.scope = "agreement";
  for (const RandomTriple& rt : random_triples(count, seed, n_max)) {
    detail::widen_scope(r, rt.g.order(), rt.k);
    ++r.graphs;
    ++r.tests;
    const bool oracle = embed_bruteforce(rt.g, rt.t, rt.u, opt.budget).has_value();
    bool constructive = false;
    try {
      const EmbedOutcome o = embed_constructive(rt.g, rt.t, rt.u, opt);
      constructive = o.embedded();
      if (constructive) ++r.embeddings;
      else ++r.certificates;
    } catch (const SoundnessError&) {
      ++r.errors;
      r.tally("unexplained");
    }
    if (constructive != oracle) {
      r.tally("disagreements");
      r.failures.push_back({to_graph6(rt.g), rt.k, rt.t.to_string(), rt.u,
                            oracle ? "oracle embeds, embedder does not" : "embedder embeds, oracle does not"});
    }
  }
  normalize(r);
  r.seconds = clock.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Extremal census

struct CensusHit {
  Vertex u = -1;
  Spider t;
  bool matched = false;
  std::optional<HCertificate> certificate;
};

struct CensusEntry {
  std::string graph6;
  int edges = 0;
  std::vector<CensusHit> hits;
};

struct Census {
  Report report;
  int threshold = 0;
  std::vector<CensusEntry> entries;
};

/// Graphs with exactly floor((k-1)n/2) edges (the largest count that fails the
/// density condition) that miss some all-even spider at some vertex of degree >= k,
/// each with whether a certificate of the expected shape exists.
inline Census extremal_census(int n, int k) {
  if (k < 1 || k % 2 != 0) throw InputError("extremal_census: k must be positive and even");
  if (n < 1) throw InputError("extremal_census: n must be positive");
  if (n > kEnumerationCap) {
    throw CapabilityError("extremal_census: built-in enumeration stops at n = " + std::to_string(kEnumerationCap));
  }
  Census c;
  c.report.scope = "census";
  c.report.n_min = c.report.n_max = n;
  c.report.k_min = c.report.k_max = k;
  c.threshold = (k - 1) * n / 2;
  const int half = k / 2;
  std::vector<Spider> family;
  for (const Spider& t : enumerate_spiders(k))
    if (in_T0_family(t)) family.push_back(t);
  for (const Graph& g : enumerate_graphs(n)) {
    if (g.edge_count() != c.threshold) continue;
    ++c.report.graphs;
    CensusEntry entry{to_graph6(g), g.edge_count(), {}};
    std::optional<HCertificate> whole;
    for (const auto& h : H_partitions(g, g.vertices()))
      if (h.b() == half) {
        whole = h;
        break;
      }
    for (Vertex u = 0; u < n; ++u) {
      if (g.degree(u) < k) continue;
      for (const Spider& t : family) {
        ++c.report.tests;
        if (embed_bruteforce(g, t, u)) {
          ++c.report.embeddings;
          continue;
        }
        CensusHit hit{u, t, false, std::nullopt};
        if (t == t0(k)) hit.certificate = find_H_subgraph(g, half + 1, half, u);
        else hit.certificate = whole;
        hit.matched = hit.certificate && verify_H_certificate(g, *hit.certificate);
        if (hit.matched) {
          ++c.report.certificates;
        } else {
          ++c.report.errors;
          c.report.tally("unmatched");
        }
        entry.hits.push_back(std::move(hit));
      }
    }
    if (!entry.hits.empty()) c.entries.push_back(std::move(entry));
  }
  c.report.tally("listed", c.entries.size());
  return c;
}

// ---------------------------------------------------------------------------
// Lemma suites

struct LemmaSuiteOptions {
  /// Sampled host orders cycle through n_min..n_max.
  int n_min = 5;
  int n_max = 10;
  /// Adds one to every sampled lambda before analysis, which the hypothesis check must reject.
  bool corrupt_lambda = false;
};

namespace detail {

inline void analyze_into(const LemmaInstance& in, Report& r) {
  ++r.tests;
  const std::string name(lemma_name(in.lemma));
  try {
    const CaseOutcome out = analyze(in);
    std::string why;
    r.tally(std::string("case.") + case_letter(out.tag));
    if (!out.reading.empty()) r.tally("reading." + out.reading);
    if (verify_case_outcome(in, out, &why)) {
      ++r.certificates;
    } else {
      ++r.errors;
      r.failures.push_back({to_graph6(in.host), in.L().size(), name, in.u, "witness rejected: " + why});
    }
  } catch (const PreconditionError&) {
    ++r.errors;
    r.tally("rejected");
  } catch (const SoundnessError& e) {
    ++r.errors;
    r.tally("soundness");
    r.failures.push_back({to_graph6(in.host), in.L().size(), name, in.u, e.what()});
  } catch (const CapabilityError&) {
    ++r.errors;
    r.tally("capability");
  }
}

}  // namespace detail

inline Report run_lemma_suite(LemmaId lemma, int samples, std::uint64_t seed, const LemmaSuiteOptions& opt = {}) {
  if (opt.n_min < 1 || opt.n_max > 12 || opt.n_min > opt.n_max) throw InputError("run_lemma_suite: bad host range");
  detail::Stopwatch clock;
  Report r;
  r.scope = std::string("lemma.") + std::string(lemma_name(lemma));
  const int orders = opt.n_max - opt.n_min + 1;
  for (int i = 0; i < orders && samples > 0; ++i) {
    const int n = opt.n_min + i;
    const int count = samples / orders + (i < samples % orders ? 1 : 0);
    if (count == 0) continue;
    SampleStats st;
    for (LemmaInstance& in : sample_instances(lemma, n, count, seed, &st)) {
      if (opt.corrupt_lambda) in.lambda_doubled += 2;
      detail::analyze_into(in, r);
    }
    if (r.n_min == 0) r.n_min = n;
    r.n_max = n;
    r.tally("discarded", st.discarded);
    r.tally("attempts", st.attempts);
  }
  r.graphs = r.tests;
  normalize(r);
  r.seconds = clock.seconds();
  return r;
}

/// Every instance on every host with at most n_max vertices.
inline Report run_lemma_exhaustive(LemmaId lemma, int n_max) {
  if (n_max > kEnumerationCap) throw CapabilityError("run_lemma_exhaustive: enumeration cap");
  detail::Stopwatch clock;
  Report r;
  r.scope = std::string("lemma.") + std::string(lemma_name(lemma)) + ".exhaustive";
  for_each_enumerated(1, n_max, [&](const Graph& g) {
    detail::widen_scope(r, g.order(), 0);
    ++r.graphs;
    for_each_instance(lemma, g, [&](const LemmaInstance& in) { detail::analyze_into(in, r); });
  });
  normalize(r);
  r.seconds = clock.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Degree bounds over every small configuration

/// Observation, reroute-end bound and longest-path bound over every graph with at
/// most n_max vertices, every u and every u-path (every longest u-path and every
/// admissible Q for the last bound). Tallies per bound.
inline Report run_bound_suite(int n_max) {
  if (n_max > kEnumerationCap) throw CapabilityError("run_bound_suite: enumeration cap");
  detail::Stopwatch clock;
  Report r;
  r.scope = "bounds";
  auto record = [&](const char* bound, bool ok, const Graph& g, Vertex u, const std::string& what) {
    ++r.tests;
    r.tally(bound);
    if (ok) {
      ++r.certificates;
    } else {
      ++r.errors;
      r.failures.push_back({to_graph6(g), 0, bound, u, what});
    }
  };
  for_each_enumerated(1, n_max, [&](const Graph& g) {
    detail::widen_scope(r, g.order(), 0);
    ++r.graphs;
    for (Vertex u = 0; u < g.order(); ++u) {
      const int longest = longest_u_path(g, u, VertexSet{}).length();
      for (int len = 0; len <= longest; ++len) {
        for_each_upath(g, u, g.vertices(), len, [&](const std::vector<Vertex>& seq) {
          const UPath p(seq);
          const std::string ps = detail::path_string(p);
          r.tally("paths");
          (g.vertices() - p.vertex_set()).for_each([&](Vertex v) {
            record("observation.vertex", check_observation1(g, p, v), g, u, ps + " v=" + std::to_string(v));
          });
          record("reroute_end", check_lemma1_bound(g, p), g, u, ps);
          if (len == longest && len >= 1) {
            const VertexSet inner = p.inner();
            const VertexSet rest = g.vertices() - inner;
            for (int ql = 1; ql < rest.size(); ++ql) {
              bool any = false;
              for_each_upath(g, u, rest, ql, [&](const std::vector<Vertex>& qs) {
                any = true;
                if (!g.neighbors(qs.back()).intersects(inner)) return false;
                const UPath q(qs);
                record("longest_path", check_lemma2_bound(g, p, q), g, u, ps + " Q=" + detail::path_string(q));
                return false;
              });
              if (!any) break;
            }
          }
          return false;
        });
      }
    }
  });
  normalize(r);
  r.seconds = clock.seconds();
  return r;
}

}  // namespace esos

#endif  // ESOS_HARNESS_HPP
