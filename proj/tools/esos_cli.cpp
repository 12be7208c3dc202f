#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "esos/esos.hpp"
#include "esos/json_io.hpp"

namespace {

using namespace esos;

enum Exit { kClean = 0, kFailures = 1, kInput = 2, kBudget = 3 };

struct Globals {
  bool json = false;
  bool timing = false;
};

std::string join(const std::vector<Vertex>& vs) {
  std::string s;
  for (Vertex v : vs) {
    if (!s.empty()) s += ' ';
    s += std::to_string(v);
  }
  return s;
}

int emit(const Report& r, const Globals& g) {
  if (g.json) {
    std::cout << to_json(r, g.timing).dump(2) << '\n';
  } else {
    std::cout << r.scope << ": n " << r.n_min << ".." << r.n_max << ", k " << r.k_min << ".." << r.k_max << '\n'
              << "  graphs " << r.graphs << ", tests " << r.tests << ", embeddings " << r.embeddings
              << ", certificates " << r.certificates << ", errors " << r.errors << '\n';
    for (const auto& [key, value] : r.tallies) std::cout << "  " << key << ' ' << value << '\n';
    for (const auto& f : r.failures) {
      std::cout << "  FAIL " << f.graph6 << " k=" << f.k << ' ' << f.spider;
      if (f.u >= 0) std::cout << " u=" << f.u;
      std::cout << ": " << f.message << '\n';
    }
    std::cout << (r.clean() ? "clean" : std::to_string(r.failures.size()) + " failures") << '\n';
    if (g.timing && r.seconds) std::cout << "  seconds " << *r.seconds << '\n';
  }
  return r.clean() ? kClean : kFailures;
}

void print_embedding(const Embedding& e) {
  std::cout << "embedded at " << e.center << " as " << e.spider.to_string() << '\n';
  for (const auto& leg : e.legs) std::cout << "  leg " << join(leg.sequence()) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spider embedding verifier"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals globals;
  app.add_flag("--json", globals.json, "Machine-readable output");
  app.add_flag("--timing", globals.timing, "Include wall-clock time in reports");

  std::string graph6;
  std::string spider_text;
  std::optional<int> at;
  bool constructive = false;
  bool relaxed = false;
  auto* embed = app.add_subcommand("embed", "Embed a spider into a graph");
  embed->add_option("graph6", graph6, "Host graph")->required();
  embed->add_option("--spider", spider_text, "Leg lengths, e.g. 3,2,1")->required();
  embed->add_option("--at", at, "Center vertex");
  embed->add_flag("--constructive", constructive, "Embed or certify at --at");
  embed->add_flag("--relaxed", relaxed, "With --constructive: do not require the local condition");

  int nmax = 5;
  bool from_stdin = false;
  bool inject_sparse = false;
  auto* check = app.add_subcommand("check", "Every spider in every dense enough graph");
  check->add_option("--nmax", nmax, "Largest order (built-in enumeration)");
  check->add_flag("--stdin", from_stdin, "Read graph6 lines from stdin instead");
  check->add_flag("--inject-sparse", inject_sparse, "Skip the density condition (harness self-test)");

  int dich_nmax = 5;
  bool dich_stdin = false;
  auto* dich = app.add_subcommand("dichotomy", "Embed-or-certify at every admissible vertex");
  dich->add_option("--nmax", dich_nmax, "Largest order (built-in enumeration)");
  dich->add_flag("--stdin", dich_stdin, "Read graph6 lines from stdin instead");

  std::string which = "all";
  int samples = 1000;
  std::uint64_t seed = 42;
  std::optional<int> exhaustive;
  auto* lemmas = app.add_subcommand("lemmas", "Seeded lemma analyses with witness verification");
  lemmas->add_option("--which", which, "3, 4, 5, 6 or all");
  lemmas->add_option("--samples", samples, "Samples per lemma")->check(CLI::NonNegativeNumber);
  lemmas->add_option("--seed", seed, "Seed");
  lemmas->add_option("--exhaustive", exhaustive, "Instead, every instance on hosts up to this order");

  int census_n = 5;
  int census_k = 4;
  auto* census = app.add_subcommand("census", "Graphs at the density threshold missing an all-even spider");
  census->add_option("--n", census_n, "Order")->required();
  census->add_option("--k", census_k, "Even number of edges")->required();

  int bounds_nmax = 6;
  auto* bounds = app.add_subcommand("bounds", "Degree bounds over every small path configuration");
  bounds->add_option("--nmax", bounds_nmax, "Largest order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kClean : kInput;
  }

  try {
    if (*embed) {
      const Graph g = parse_graph6(graph6);
      const Spider t = Spider::parse(spider_text);
      if (constructive) {
        if (!at) throw InputError("--constructive needs --at");
        ConstructiveOptions opt;
        opt.require_local_condition = !relaxed;
        const EmbedOutcome o = embed_constructive(g, t, *at, opt);
        if (globals.json) {
          std::cout << to_json(o).dump(2) << '\n';
        } else if (o.embedded()) {
          print_embedding(*o.embedding);
        } else {
          const Certified& c = *o.certified;
          std::cout << "certified " << certificate_kind_name(c.kind) << " X = " << join(c.cert.x.to_vector())
                    << " Y = " << join(c.cert.y.to_vector()) << '\n';
        }
        return kClean;
      }
      const auto e = embed_bruteforce(g, t, at);
      if (globals.json) {
        std::cout << (e ? to_json(*e) : json{{"outcome", "none"}}).dump(2) << '\n';
      } else if (e) {
        print_embedding(*e);
      } else {
        std::cout << "no embedding\n";
      }
      return kClean;
    }
    if (*check) {
      VerifyOptions opt;
      opt.skip_density = inject_sparse;
      return emit(from_stdin ? verify_conjecture_spiders(std::cin, opt) : verify_conjecture_spiders(nmax, opt),
                  globals);
    }
    if (*dich) {
      if (!dich_stdin) return emit(dichotomy_check(dich_nmax), globals);
      Report r;
      r.scope = "dichotomy";
      for_each_graph6(std::cin, [&](const Graph& g) { dichotomy_graph(g, r); });
      normalize(r);
      return emit(r, globals);
    }
    if (*lemmas) {
      std::vector<LemmaId> ids;
      if (which == "all") ids.assign(std::begin(kAllLemmas), std::end(kAllLemmas));
      else ids.push_back(lemma_from_number(std::stoi(which)));
      Report total;
      total.scope = "lemmas";
      json parts = json::array();
      int code = kClean;
      for (LemmaId id : ids) {
        const Report r = exhaustive ? run_lemma_exhaustive(id, *exhaustive) : run_lemma_suite(id, samples, seed);
        if (ids.size() == 1) return emit(r, globals);
        if (globals.json) parts.push_back(to_json(r, globals.timing));
        else if (emit(r, globals) != kClean) code = kFailures;
        if (!r.clean()) code = kFailures;
      }
      if (globals.json) std::cout << parts.dump(2) << '\n';
      return code;
    }
    if (*census) {
      const Census c = extremal_census(census_n, census_k);
      if (globals.json) {
        std::cout << to_json(c, globals.timing).dump(2) << '\n';
        return kClean;
      }
      std::cout << "threshold e = " << c.threshold << ", " << c.report.graphs << " graphs at the threshold, "
                << c.entries.size() << " listed\n";
      for (const auto& e : c.entries) {
        std::cout << "  " << e.graph6 << '\n';
        for (const auto& h : e.hits) {
          std::cout << "    u=" << h.u << ' ' << h.t.to_string() << (h.matched ? " matched" : " unmatched");
          if (h.certificate)
            std::cout << " X = " << join(h.certificate->x.to_vector()) << " Y = " << join(h.certificate->y.to_vector());
          std::cout << '\n';
        }
      }
      return kClean;
    }
    if (*bounds) return emit(run_bound_suite(bounds_nmax), globals);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const CapabilityError& e) {
    std::cerr << "capability: " << e.what() << '\n';
    return kBudget;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << '\n';
    return kInput;
  } catch (const SoundnessError& e) {
    std::cerr << "internal: " << e.what() << '\n';
    return kFailures;
  }
  return kClean;
}
