#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace dipw {

using Vertex = std::uint32_t;

/// Dense bitset over the vertex universe 0..n-1.
///
/// All binary operations require both operands to share the same universe
/// size; mixing universes is a programming error and is caught by assert.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}
  VertexSet(std::size_t universe, std::initializer_list<Vertex> members);
  VertexSet(std::size_t universe, const std::vector<Vertex>& members);

  static VertexSet full(std::size_t universe);

  std::size_t universe() const noexcept { return universe_; }

  bool contains(Vertex v) const noexcept {
    return v < universe_ && ((words_[v >> 6] >> (v & 63)) & 1U) != 0;
  }
  void insert(Vertex v);
  void erase(Vertex v);

  std::size_t count() const noexcept;
  bool empty() const noexcept;

  /// Smallest member, or universe() when empty.
  Vertex first() const noexcept;

  bool is_subset_of(const VertexSet& other) const;
  bool intersects(const VertexSet& other) const;

  VertexSet& operator|=(const VertexSet& other);
  VertexSet& operator&=(const VertexSet& other);
  VertexSet& operator-=(const VertexSet& other);
  VertexSet& operator^=(const VertexSet& other);

  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
  friend VertexSet operator^(VertexSet a, const VertexSet& b) { return a ^= b; }

  /// Complement within the universe.
  VertexSet complement() const;

  VertexSet with(Vertex v) const {
    VertexSet r = *this;
    r.insert(v);
    return r;
  }
  VertexSet without(Vertex v) const {
    VertexSet r = *this;
    r.erase(v);
    return r;
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = std::countr_zero(bits);
        fn(static_cast<Vertex>(w * 64 + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
  }

  std::vector<Vertex> members() const;

  /// Space separated member list, e.g. "0 3 5".
  std::string to_string() const;

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }
  friend bool operator<(const VertexSet& a, const VertexSet& b) {
    return a.words_ < b.words_;
  }

 private:
  void trim() noexcept;

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const noexcept;
};

}  // namespace dipw
