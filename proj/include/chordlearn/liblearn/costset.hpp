#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "chordlearn/parser/derivation_graph.hpp"

namespace chordlearn {

/// A library subset (sorted fn ids) and the cost of a derivation that uses it.
struct CostPair {
  std::vector<FnId> lib;
  std::uint64_t cost = 0;

  friend bool operator==(const CostPair&, const CostPair&) = default;
};

/// Canonical pair order: cost, then library size, then library ids.
bool cheaper(const CostPair& a, const CostPair& b);

using CostSet = std::vector<CostPair>;

/// Removes q whenever some other p has lib(p) ⊆ lib(q) and cost(p) ≤ cost(q).
/// The result is sorted by `cheaper`.
CostSet reduce(CostSet set);

/// Keeps the `beam` cheapest pairs (`beam == 0` keeps everything), sorted.
CostSet prune(CostSet set, std::size_t beam);

using StorageFn = std::function<std::uint64_t(const std::vector<FnId>&)>;

/// Same, ranking by cost plus the storage of the library, ties as in `cheaper`.
CostSet prune_by_objective(CostSet set, std::size_t beam, const StorageFn& storage);

enum class PruneKey { UseCost, Objective };

/// Sorted union of two libraries.
std::vector<FnId> lib_union(const std::vector<FnId>& a, const std::vector<FnId>& b);

struct CostOptions {
  std::size_t max_lib = 15;
  std::size_t beam = 5;  // 0: unbounded
  bool reduce = true;
  PruneKey key = PruneKey::UseCost;
  /// Library storage; needed for PruneKey::Objective.
  StorageFn storage;
};

/// Bottom-up cost sets over the root-connected classes of a saturated graph.
/// Leaf: {(∅,1)}. Composition: product of the children's sets, libraries joined,
/// cost 1 + Σ. Application of f: f joined to the arguments' libraries, cost 1 + Σ
/// over arguments. Pairs whose library exceeds `max_lib` are dropped; a class
/// keeps Prune(Reduce(union of its nodes' sets)).
class CostSetAnalysis {
 public:
  CostSetAnalysis(const DerivationGraph& graph, CostOptions options);

  const CostSet& of(EClassId cls);
  /// Union of the piece's full-span class sets, reduced and pruned.
  CostSet root_set(PieceIndex piece);

 private:
  CostSet node_set(const ENode& node);
  CostSet finish(CostSet set) const;

  const DerivationGraph& graph_;
  CostOptions options_;
  std::unordered_map<EClassId, CostSet> memo_;
  std::unordered_map<EClassId, bool> on_stack_;
};

}  // namespace chordlearn
