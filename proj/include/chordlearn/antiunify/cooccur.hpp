#pragma once

#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "chordlearn/parser/derivation_graph.hpp"

namespace chordlearn {

/// Which pairs of derivation classes can appear together in the corpus
/// explanation: inside one complete parse of a piece, or in parses of two
/// different pieces. Only root-connected classes take part.
class CoOccur {
 public:
  bool contains(EClassId a, EClassId b) const;
  /// Root-connected classes, ascending.
  const std::vector<EClassId>& classes() const { return classes_; }
  std::size_t within_piece_pairs() const { return pairs_.size(); }

 private:
  friend CoOccur compute_cooccur(const DerivationGraph& graph);

  static std::uint64_t key(EClassId a, EClassId b);

  std::vector<EClassId> classes_;
  std::unordered_map<EClassId, PieceIndex> piece_of_;
  std::unordered_set<std::uint64_t> pairs_;
};

/// Requires `filter_root_connected`.
CoOccur compute_cooccur(const DerivationGraph& graph);

}  // namespace chordlearn
