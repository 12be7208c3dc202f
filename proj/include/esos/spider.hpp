#ifndef ESOS_SPIDER_HPP
#define ESOS_SPIDER_HPP

#include <algorithm>
#include <charconv>
#include <compare>
#include <functional>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "esos/errors.hpp"

namespace esos {

/// A spider as its multiset of leg lengths, kept sorted non-increasing.
/// The empty spider (k = 0) is only produced by strip_leaf on a single edge.
class Spider {
 public:
  Spider() = default;

  explicit Spider(std::vector<int> legs) : legs_(std::move(legs)) {
    for (int l : legs_) {
      if (l < 1) throw InputError("spider legs must have positive length");
    }
    std::sort(legs_.begin(), legs_.end(), std::greater<>());
  }

  /// Parses "3,2,1".
  static Spider parse(std::string_view text) {
    std::vector<int> legs;
    while (!text.empty()) {
      const auto comma = text.find(',');
      const std::string_view item = text.substr(0, comma);
      int value = 0;
      const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
      if (ec != std::errc{} || ptr != item.data() + item.size()) {
        throw InputError("bad spider literal '" + std::string(item) + "'");
      }
      legs.push_back(value);
      if (comma == std::string_view::npos) break;
      text.remove_prefix(comma + 1);
    }
    if (legs.empty()) throw InputError("empty spider literal");
    return Spider(std::move(legs));
  }

  const std::vector<int>& legs() const { return legs_; }
  int leg_count() const { return static_cast<int>(legs_.size()); }
  int edges() const { return std::accumulate(legs_.begin(), legs_.end(), 0); }
  bool empty() const { return legs_.empty(); }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < legs_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(legs_[i]);
    }
    return s;
  }

  friend bool operator==(const Spider&, const Spider&) = default;
  friend auto operator<=>(const Spider&, const Spider&) = default;

 private:
  std::vector<int> legs_;
};

/// All spiders with k edges, one per partition of k, largest first part first:
/// k=4 gives 4 | 3,1 | 2,2 | 2,1,1 | 1,1,1,1.
inline std::vector<Spider> enumerate_spiders(int k) {
  if (k < 1) throw InputError("enumerate_spiders: k must be positive");
  std::vector<Spider> out;
  std::vector<int> parts;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.emplace_back(parts);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      parts.push_back(p);
      rec(remaining - p, p);
      parts.pop_back();
    }
  };
  rec(k, k);
  return out;
}

/// Every leg has even length.
inline bool in_T0_family(const Spider& t) {
  if (t.empty()) return false;
  return std::all_of(t.legs().begin(), t.legs().end(), [](int l) { return l % 2 == 0; });
}

/// k/2 legs of length 2.
inline Spider t0(int k) {
  if (k < 2 || k % 2 != 0) throw InputError("t0: k must be even and positive");
  return Spider(std::vector<int>(static_cast<std::size_t>(k / 2), 2));
}

/// Shortens leg `leg_index` by one edge (dropping it at length 1) and re-sorts.
inline Spider strip_leaf(const Spider& t, int leg_index) {
  if (leg_index < 0 || leg_index >= t.leg_count()) {
    throw InputError("strip_leaf: leg index " + std::to_string(leg_index) + " out of range");
  }
  std::vector<int> legs = t.legs();
  if (--legs[leg_index] == 0) legs.erase(legs.begin() + leg_index);
  return Spider(std::move(legs));
}

}  // namespace esos

#endif  // ESOS_SPIDER_HPP
