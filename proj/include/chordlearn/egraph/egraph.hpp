#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "chordlearn/egraph/analysis.hpp"
#include "chordlearn/egraph/union_find.hpp"

namespace chordlearn::eg {

using Symbol = std::uint32_t;

class SymbolTable {
 public:
  Symbol intern(std::string_view name);
  std::optional<Symbol> lookup(std::string_view name) const;
  const std::string& name(Symbol symbol) const { return names_.at(symbol); }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Symbol> index_;
};

/// An operator applied to child e-classes. `site` distinguishes nodes that share
/// an operator but stand for different occurrences (0 means "shared"); it takes
/// part in hash-consing but not in the operator's meaning.
struct ENode {
  Symbol op = 0;
  std::uint32_t site = 0;
  std::vector<EClassId> children;

  friend bool operator==(const ENode&, const ENode&) = default;
  friend auto operator<=>(const ENode&, const ENode&) = default;
};

struct ENodeHash {
  std::size_t operator()(const ENode& node) const noexcept;
};

/// A ground term, for bulk insertion.
struct Term {
  Symbol op = 0;
  std::uint32_t site = 0;
  std::vector<Term> children;
};

struct EClass {
  EClassId id;
  std::vector<ENode> nodes;
  std::vector<std::pair<ENode, EClassId>> parents;
};

class EGraph {
 public:
  EGraph() = default;
  EGraph(const EGraph&) = delete;
  EGraph& operator=(const EGraph&) = delete;
  EGraph(EGraph&&) = default;
  EGraph& operator=(EGraph&&) = default;

  SymbolTable& symbols() { return symbols_; }
  const SymbolTable& symbols() const { return symbols_; }

  /// Hash-conses `node` (children canonicalized first) and returns its class.
  EClassId add(ENode node);
  EClassId add_term(const Term& term);
  std::optional<EClassId> lookup(ENode node) const;

  /// Merges two classes. Congruence is restored lazily by `rebuild`.
  bool unite(EClassId a, EClassId b);
  void rebuild();
  bool needs_rebuild() const { return !pending_.empty(); }

  EClassId find(EClassId id) const { return union_find_.find(id); }
  const EClass& eclass(EClassId id) const;

  /// Canonical class ids in ascending order.
  std::vector<EClassId> class_ids() const;
  std::size_t num_classes() const { return classes_.size(); }
  std::size_t num_nodes() const { return memo_.size(); }
  ENode canonicalize(ENode node) const;

  template <Semilattice L>
  SlotKey<L> add_slot(std::string name) {
    slots_.push_back(std::make_unique<detail::SlotStore<L>>(std::move(name)));
    return SlotKey<L>{slots_.size() - 1};
  }

  template <Semilattice L>
  const typename L::value_type* slot(SlotKey<L> key, EClassId id) const {
    return store(key).get(find(id).value);
  }

  /// Joins `value` into the slot of `id`'s class. Returns whether it changed.
  template <Semilattice L>
  bool update_slot(SlotKey<L> key, EClassId id, const typename L::value_type& value) {
    return store(key).update(find(id).value, value);
  }

  std::size_t num_slots() const { return slots_.size(); }
  const detail::SlotStoreBase& slot_store(std::size_t index) const { return *slots_.at(index); }

 private:
  template <Semilattice L>
  detail::SlotStore<L>& store(SlotKey<L> key) const {
    return static_cast<detail::SlotStore<L>&>(*slots_.at(key.index));
  }

  void repair(EClassId id);

  SymbolTable symbols_;
  UnionFind union_find_;
  std::unordered_map<ENode, EClassId, ENodeHash> memo_;
  std::unordered_map<std::uint32_t, EClass> classes_;
  std::vector<EClassId> pending_;
  std::vector<std::unique_ptr<detail::SlotStoreBase>> slots_;
};

}  // namespace chordlearn::eg
