#ifndef ESOS_JSON_IO_HPP
#define ESOS_JSON_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "esos/embedder.hpp"
#include "esos/harness.hpp"
#include "esos/report.hpp"

namespace esos {

using json = nlohmann::ordered_json;

inline json to_json(const VertexSet& s) { return s.to_vector(); }

inline json to_json(const HCertificate& c) { return {{"x", to_json(c.x)}, {"y", to_json(c.y)}}; }

inline json to_json(const Embedding& e) {
  json legs = json::array();
  for (const auto& l : e.legs) legs.push_back(l.sequence());
  return {{"center", e.center}, {"spider", e.spider.legs()}, {"legs", legs}};
}

inline json to_json(const EmbedOutcome& o) {
  if (o.embedded()) {
    json j = {{"outcome", "embedded"}, {"center", o.embedding->center}};
    json legs = json::array();
    for (const auto& l : o.embedding->legs) legs.push_back(l.sequence());
    j["legs"] = legs;
    j["phase"] = o.phase;
    return j;
  }
  const Certified& c = *o.certified;
  json j = {{"outcome", "certified"},
            {"kind", certificate_kind_name(c.kind)},
            {"x", to_json(c.cert.x)},
            {"y", to_json(c.cert.y)},
            {"t0_member", c.t0_member}};
  if (c.maximal) j["maximal"] = to_json(*c.maximal);
  return j;
}

inline json to_json(const Failure& f) {
  json j = {{"graph6", f.graph6}, {"k", f.k}, {"spider", f.spider}};
  if (f.u >= 0) j["u"] = f.u;
  j["message"] = f.message;
  return j;
}

/// Timing is left out unless asked for, so repeated runs print identical bytes.
inline json to_json(const Report& r, bool with_timing = false) {
  json j = {{"scope", r.scope},
            {"n", {r.n_min, r.n_max}},
            {"k", {r.k_min, r.k_max}},
            {"graphs", r.graphs},
            {"tests", r.tests},
            {"embeddings", r.embeddings},
            {"certificates", r.certificates},
            {"errors", r.errors},
            {"tallies", r.tallies}};
  json fs = json::array();
  for (const auto& f : r.failures) fs.push_back(to_json(f));
  j["failures"] = fs;
  j["clean"] = r.clean();
  if (with_timing && r.seconds) j["seconds"] = *r.seconds;
  return j;
}

inline json to_json(const Census& c, bool with_timing = false) {
  json entries = json::array();
  for (const auto& e : c.entries) {
    json hits = json::array();
    for (const auto& h : e.hits) {
      json hj = {{"u", h.u}, {"spider", h.t.legs()}, {"matched", h.matched}};
      if (h.certificate) hj["certificate"] = to_json(*h.certificate);
      hits.push_back(hj);
    }
    entries.push_back({{"graph6", e.graph6}, {"edges", e.edges}, {"misses", hits}});
  }
  return {{"threshold", c.threshold}, {"entries", entries}, {"report", to_json(c.report, with_timing)}};
}

}  // namespace esos

#endif  // ESOS_JSON_IO_HPP
