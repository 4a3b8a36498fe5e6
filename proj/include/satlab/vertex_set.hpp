#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace satlab {

using Vertex = std::uint32_t;
using Word = std::uint64_t;

inline constexpr std::size_t kWordBits = 64;

inline constexpr std::size_t words_for(std::size_t bits) {
  return (bits + kWordBits - 1) / kWordBits;
}

// Word-level kernels shared by VertexSet and Graph adjacency rows.
namespace bits {

inline std::size_t popcount(std::span<const Word> a) {
  std::size_t c = 0;
  for (Word w : a) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

inline std::size_t and_popcount(std::span<const Word> a, std::span<const Word> b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return c;
}

inline bool intersects(std::span<const Word> a, std::span<const Word> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & b[i]) return true;
  return false;
}

inline bool any(std::span<const Word> a) {
  return std::any_of(a.begin(), a.end(), [](Word w) { return w != 0; });
}

inline bool test(std::span<const Word> a, std::size_t i) {
  return (a[i / kWordBits] >> (i % kWordBits)) & 1U;
}

inline void set(std::span<Word> a, std::size_t i) { a[i / kWordBits] |= Word{1} << (i % kWordBits); }
inline void reset(std::span<Word> a, std::size_t i) { a[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }

inline void assign_and(std::span<Word> out, std::span<const Word> a, std::span<const Word> b) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] & b[i];
}

inline std::optional<std::size_t> first(std::span<const Word> a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i]) return i * kWordBits + static_cast<std::size_t>(std::countr_zero(a[i]));
  return std::nullopt;
}

/// Calls f(index) for every set bit in increasing order.
template <typename F>
void for_each(std::span<const Word> a, F&& f) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    Word w = a[i];
    while (w) {
      const auto b = static_cast<std::size_t>(std::countr_zero(w));
      f(static_cast<Vertex>(i * kWordBits + b));
      w &= w - 1;
    }
  }
}

}  // namespace bits

/// Subset of the vertex range [0, universe) stored as a bitset.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : universe_(universe), words_(words_for(universe), 0) {}
  VertexSet(std::size_t universe, std::initializer_list<Vertex> members) : VertexSet(universe) {
    for (Vertex v : members) insert(v);
  }
  VertexSet(std::size_t universe, std::span<const Vertex> members) : VertexSet(universe) {
    for (Vertex v : members) insert(v);
  }
  /// Takes ownership of raw words; bits at or beyond `universe` must be clear.
  VertexSet(std::size_t universe, std::vector<Word> words) : universe_(universe), words_(std::move(words)) {
    if (words_.size() != words_for(universe)) throw std::invalid_argument("VertexSet: word count mismatch");
  }

  static VertexSet full(std::size_t universe) {
    VertexSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) bits::set(s.words_, i);
    return s;
  }
  /// {first, first + 1, ..., last - 1}
  static VertexSet range(std::size_t universe, Vertex first, Vertex last) {
    VertexSet s(universe);
    for (Vertex v = first; v < last; ++v) s.insert(v);
    return s;
  }

  std::size_t universe() const { return universe_; }
  std::size_t size() const { return bits::popcount(words_); }
  bool empty() const { return !bits::any(words_); }

  bool contains(Vertex v) const { return v < universe_ && bits::test(words_, v); }
  void insert(Vertex v) {
    check(v);
    bits::set(words_, v);
  }
  void erase(Vertex v) {
    check(v);
    bits::reset(words_, v);
  }
  void clear() { std::fill(words_.begin(), words_.end(), 0); }

  std::optional<Vertex> first() const {
    auto f = bits::first(words_);
    if (!f) return std::nullopt;
    return static_cast<Vertex>(*f);
  }

  template <typename F>
  void for_each(F&& f) const {
    bits::for_each(words_, f);
  }

  std::vector<Vertex> to_vector() const {
    std::vector<Vertex> out;
    out.reserve(size());
    for_each([&](Vertex v) { out.push_back(v); });
    return out;
  }

  bool intersects(const VertexSet& o) const {
    same_universe(o);
    return bits::intersects(words_, o.words_);
  }
  bool is_subset_of(const VertexSet& o) const {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  VertexSet& operator&=(const VertexSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  VertexSet& operator|=(const VertexSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  /// Set difference.
  VertexSet& operator-=(const VertexSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  VertexSet& operator&=(std::span<const Word> row) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= row[i];
    return *this;
  }

  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
  friend bool operator==(const VertexSet&, const VertexSet&) = default;

  std::span<const Word> words() const { return words_; }
  std::span<Word> words() { return words_; }

  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for_each([&](Vertex v) {
      if (!first) out += ',';
      out += std::to_string(v);
      first = false;
    });
    return out + "}";
  }

 private:
  void check(Vertex v) const {
    if (v >= universe_)
      throw std::out_of_range("VertexSet: vertex " + std::to_string(v) + " outside universe of " +
                              std::to_string(universe_));
  }
  void same_universe(const VertexSet& o) const {
    if (o.universe_ != universe_) throw std::invalid_argument("VertexSet: universe mismatch");
  }

  std::size_t universe_ = 0;
  std::vector<Word> words_;
};

}  // namespace satlab
