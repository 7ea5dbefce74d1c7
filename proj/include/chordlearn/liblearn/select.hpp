#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "chordlearn/liblearn/costset.hpp"
#include "chordlearn/liblearn/rewrite.hpp"

namespace chordlearn {

class UnparsedPieceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SelectOptions {
  std::size_t max_lib = 15;
  std::size_t beam = 5;  // corpus-level beam, 0: unbounded
  bool reduce = true;
  PruneKey key = PruneKey::UseCost;
};

struct Refactoring {
  Template program;
  std::uint64_t cost = 0;
};

struct Selection {
  /// Abstractions used by the extracted programs, ascending ids.
  std::vector<FnId> library;
  std::size_t storage = 0;
  /// Per piece, in corpus order.
  std::vector<Refactoring> programs;
  std::uint64_t use_cost() const;
  std::uint64_t objective() const { return storage + use_cost(); }
};

/// Folds the piece root sets under a virtual corpus root (product, libraries
/// joined, costs summed, Reduce, Prune), re-seeding the library-free pair at every
/// step. Returns the surviving pairs.
CostSet fold_corpus(const std::vector<CostSet>& roots, const std::vector<std::uint64_t>& baselines,
                    const SelectOptions& options, const StorageFn& storage);

/// Chooses L* = argmin storage(L) + cost over the folded pairs, extracts each piece
/// with L*, and keeps the abstractions the programs use plus those their bodies
/// are written with.
Selection select_library(DerivationGraph& graph, StorageModel& storage, CostSetAnalysis& analysis, const SelectOptions& options);

/// Cheapest program for `cls` using only primitive nodes and applications of `allowed`.
/// Ties go to the smaller template in template order.
std::optional<Refactoring> extract_class(const DerivationGraph& graph, EClassId cls, const std::vector<FnId>& allowed);

/// Cheapest program over the piece's full-span classes.
std::optional<Refactoring> extract_refactored(const DerivationGraph& graph, PieceIndex piece,
                                              const std::vector<FnId>& allowed);

/// Expands a program's applications through the abstraction bodies.
Template expand_program(const Template& program, const std::vector<Abstraction>& abstractions);

/// Chords under the leaves of a primitive derivation located in `cls`, left to
/// right, or nullopt if the derivation is not a member of the class.
std::optional<std::vector<harmony::ChordLabel>> surface_reading(const DerivationGraph& graph, EClassId cls,
                                                                const Template& derivation);

}  // namespace chordlearn
