#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace lgsolve {

/// Dense subset of the vertex indices {0, ..., n-1} of a graph.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : bits_(universe, 0) {}

  static VertexSet full(std::size_t universe) {
    VertexSet s(universe);
    std::fill(s.bits_.begin(), s.bits_.end(), std::uint8_t{1});
    return s;
  }

  template <typename Range>
  static VertexSet of(std::size_t universe, const Range& indices) {
    VertexSet s(universe);
    for (auto i : indices) s.insert(static_cast<std::size_t>(i));
    return s;
  }

  std::size_t universe() const { return bits_.size(); }
  bool contains(std::size_t v) const { return bits_[v] != 0; }
  void insert(std::size_t v) { bits_[v] = 1; }
  void erase(std::size_t v) { bits_[v] = 0; }
  void set(std::size_t v, bool in) { bits_[v] = in ? 1 : 0; }

  std::size_t count() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
  }
  bool empty() const { return count() == 0; }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < bits_.size(); ++v)
      if (bits_[v]) out.push_back(v);
    return out;
  }

  bool is_subset_of(const VertexSet& other) const {
    for (std::size_t v = 0; v < bits_.size(); ++v)
      if (bits_[v] && !other.bits_[v]) return false;
    return true;
  }

  bool intersects(const VertexSet& other) const {
    for (std::size_t v = 0; v < bits_.size(); ++v)
      if (bits_[v] && other.bits_[v]) return true;
    return false;
  }

  VertexSet& operator&=(const VertexSet& o) {
    for (std::size_t v = 0; v < bits_.size(); ++v) bits_[v] &= o.bits_[v];
    return *this;
  }
  VertexSet& operator|=(const VertexSet& o) {
    for (std::size_t v = 0; v < bits_.size(); ++v) bits_[v] |= o.bits_[v];
    return *this;
  }
  /// Set difference.
  VertexSet& operator-=(const VertexSet& o) {
    for (std::size_t v = 0; v < bits_.size(); ++v) bits_[v] &= static_cast<std::uint8_t>(!o.bits_[v]);
    return *this;
  }

  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace lgsolve
