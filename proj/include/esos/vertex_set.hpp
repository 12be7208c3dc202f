#ifndef ESOS_VERTEX_SET_HPP
#define ESOS_VERTEX_SET_HPP

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace esos {

using Vertex = int;

inline constexpr int kMaxVertices = 128;

/// Subset of {0, ..., 127} packed into two machine words.
class VertexSet {
 public:
  constexpr VertexSet() = default;

  VertexSet(std::initializer_list<Vertex> vs) {
    for (Vertex v : vs) insert(v);
  }

  static VertexSet range(int n) {
    VertexSet s;
    for (int w = 0; w < kWords; ++w) {
      const int lo = w * 64;
      if (n >= lo + 64) {
        s.words_[w] = ~std::uint64_t{0};
      } else if (n > lo) {
        s.words_[w] = (std::uint64_t{1} << (n - lo)) - 1;
      }
    }
    return s;
  }

  static VertexSet from(const std::vector<Vertex>& vs) {
    VertexSet s;
    for (Vertex v : vs) s.insert(v);
    return s;
  }

  bool contains(Vertex v) const { return (words_[v >> 6] >> (v & 63)) & 1u; }
  void insert(Vertex v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void erase(Vertex v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }

  int size() const { return std::popcount(words_[0]) + std::popcount(words_[1]); }
  bool empty() const { return (words_[0] | words_[1]) == 0; }

  /// Smallest member, or -1 when empty.
  Vertex first() const {
    if (words_[0]) return std::countr_zero(words_[0]);
    if (words_[1]) return 64 + std::countr_zero(words_[1]);
    return -1;
  }

  /// Largest member, or -1 when empty.
  Vertex last() const {
    if (words_[1]) return 127 - std::countl_zero(words_[1]);
    if (words_[0]) return 63 - std::countl_zero(words_[0]);
    return -1;
  }

  bool subset_of(const VertexSet& o) const {
    return (words_[0] & ~o.words_[0]) == 0 && (words_[1] & ~o.words_[1]) == 0;
  }
  bool intersects(const VertexSet& o) const {
    return (words_[0] & o.words_[0]) != 0 || (words_[1] & o.words_[1]) != 0;
  }

  VertexSet& operator|=(const VertexSet& o) {
    words_[0] |= o.words_[0];
    words_[1] |= o.words_[1];
    return *this;
  }
  VertexSet& operator&=(const VertexSet& o) {
    words_[0] &= o.words_[0];
    words_[1] &= o.words_[1];
    return *this;
  }
  /// Set difference.
  VertexSet& operator-=(const VertexSet& o) {
    words_[0] &= ~o.words_[0];
    words_[1] &= ~o.words_[1];
    return *this;
  }

  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  /// Orders sets by their word encoding; used only for deterministic containers.
  friend std::strong_ordering operator<=>(const VertexSet& a, const VertexSet& b) {
    if (auto c = a.words_[1] <=> b.words_[1]; c != 0) return c;
    return a.words_[0] <=> b.words_[0];
  }

  template <class F>
  void for_each(F&& f) const {
    for (int w = 0; w < kWords; ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        f(w * 64 + std::countr_zero(bits));
        bits &= bits - 1;
      }
    }
  }

  std::vector<Vertex> to_vector() const {
    std::vector<Vertex> out;
    out.reserve(static_cast<std::size_t>(size()));
    for_each([&](Vertex v) { out.push_back(v); });
    return out;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first_item = true;
    for_each([&](Vertex v) {
      if (!first_item) s += ",";
      s += std::to_string(v);
      first_item = false;
    });
    return s + "}";
  }

  std::uint64_t word(int i) const { return words_[i]; }

 private:
  static constexpr int kWords = 2;
  std::array<std::uint64_t, kWords> words_{};
};

}  // namespace esos

#endif  // ESOS_VERTEX_SET_HPP
