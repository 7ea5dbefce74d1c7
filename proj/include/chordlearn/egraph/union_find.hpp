#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <vector>

namespace chordlearn::eg {

/// Opaque handle to an e-class. Resolve through `UnionFind::find` before comparing.
struct EClassId {
  std::uint32_t value = 0;

  friend auto operator<=>(EClassId, EClassId) = default;
};

class UnionFind {
 public:
  EClassId make_set() {
    auto id = EClassId{static_cast<std::uint32_t>(parent_.size())};
    parent_.push_back(id.value);
    return id;
  }

  EClassId find(EClassId id) const {
    auto current = id.value;
    while (parent_[current] != current) current = parent_[current];
    return EClassId{current};
  }

  /// Path-halving variant used on the mutation path.
  EClassId find_compress(EClassId id) {
    auto current = id.value;
    while (parent_[current] != current) {
      parent_[current] = parent_[parent_[current]];
      current = parent_[current];
    }
    return EClassId{current};
  }

  /// Makes `root` the representative of `other`. Both must already be roots.
  void link(EClassId root, EClassId other) { parent_[other.value] = root.value; }

  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::uint32_t> parent_;
};

}  // namespace chordlearn::eg

template <>
struct std::hash<chordlearn::eg::EClassId> {
  std::size_t operator()(chordlearn::eg::EClassId id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
