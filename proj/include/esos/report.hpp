#ifndef ESOS_REPORT_HPP
#define ESOS_REPORT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace esos {

struct Failure {
  std::string graph6;
  int k = 0;
  std::string spider;  ///< leg list, or the lemma name for lemma suites
  int u = -1;
  std::string message;

  friend bool operator==(const Failure&, const Failure&) = default;
  friend auto operator<=>(const Failure&, const Failure&) = default;
};

struct Report {
  std::string scope;
  int n_min = 0;
  int n_max = 0;
  int k_min = 0;
  int k_max = 0;

  std::uint64_t graphs = 0;
  std::uint64_t tests = 0;
  std::uint64_t embeddings = 0;
  std::uint64_t certificates = 0;
  std::uint64_t errors = 0;
  /// Further named tallies (cases, readings, rejections, phases).
  std::map<std::string, std::uint64_t> tallies;

  std::vector<Failure> failures;
  std::optional<double> seconds;

  bool clean() const { return failures.empty(); }
  bool consistent() const { return embeddings + certificates + errors == tests; }

  void tally(const std::string& key, std::uint64_t by = 1) { tallies[key] += by; }

  /// Adds another report's counts and failures into this one.
  void merge(const Report& other) {
    graphs += other.graphs;
    tests += other.tests;
    embeddings += other.embeddings;
    certificates += other.certificates;
    errors += other.errors;
    for (const auto& [k, v] : other.tallies) tallies[k] += v;
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  }
};

}  // namespace esos

#endif  // ESOS_REPORT_HPP
