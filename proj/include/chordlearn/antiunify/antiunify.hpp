#pragma once

#include <functional>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "chordlearn/antiunify/cooccur.hpp"
#include "chordlearn/antiunify/pattern.hpp"

namespace chordlearn {

/// Unordered class pair, smaller id first.
struct ClassPair {
  EClassId a;
  EClassId b;

  static ClassPair of(EClassId x, EClassId y) { return y < x ? ClassPair{y, x} : ClassPair{x, y}; }
  friend auto operator<=>(const ClassPair&, const ClassPair&) = default;
};

struct ClassPairHash {
  std::size_t operator()(const ClassPair& p) const noexcept {
    return std::hash<std::uint64_t>{}((std::uint64_t{p.a.value} << 32) | p.b.value);
  }
};

/// Outcome of anti-unifying two e-nodes. `ready` is false when some child pair
/// is not finalized yet; those pairs are listed in `waiting`.
struct NodeAu {
  bool ready = true;
  std::vector<PatternId> patterns;
  std::vector<ClassPair> waiting;
};

/// Finalized candidates of a child pair, or nullptr if not finalized.
using FinalizedLookup = std::function<const std::vector<PatternId>*(ClassPair)>;

/// Same leaf: itself. Different leaves, different rules, or leaf vs composition:
/// a hole. Same composition rule: every combination of the children's anti-unifiers.
NodeAu anti_unify_nodes(const DerivationGraph& graph, PatternBank& bank, const ENode& x, const ENode& y,
                        const FinalizedLookup& finalized);

enum class AuOrder { Forward, Reverse };

struct AuOptions {
  std::size_t iteration_cap = 10'000;
  AuOrder order = AuOrder::Forward;
};

struct AuStats {
  std::size_t rounds = 0;
  std::size_t pairs = 0;
  std::size_t node_pairs = 0;
  /// Attempts to add candidates to an already finalized pair (must stay 0).
  std::size_t late_additions = 0;
  bool converged = true;
};

/// Alternates node-level anti-unification (for node pairs whose child pairs are
/// final) with class-pair finalization (once all node pairs have reported).
class AntiUnifier {
 public:
  AntiUnifier(const DerivationGraph& graph, AuOptions options = {});

  /// Requests the anti-unifiers of a pair; `run` computes everything requested.
  void request(EClassId a, EClassId b);
  void run();

  bool finalized(EClassId a, EClassId b) const;
  /// Candidates of a finalized pair, sorted.
  std::vector<Template> candidates(EClassId a, EClassId b) const;
  const std::vector<PatternId>* candidate_ids(ClassPair pair) const;

  PatternBank& bank() { return bank_; }
  const PatternBank& bank() const { return bank_; }
  const AuStats& stats() const { return stats_; }

 private:
  struct PairState {
    std::vector<ENode> left;
    std::vector<ENode> right;
    std::vector<bool> done;
    std::size_t remaining = 0;
    std::vector<PatternId> candidates;
    bool finalized = false;
  };

  PairState& state(ClassPair pair);
  std::vector<ENode> derivation_nodes(EClassId cls) const;
  void add_candidates(PairState& s, const std::vector<PatternId>& patterns);

  const DerivationGraph& graph_;
  AuOptions options_;
  PatternBank bank_;
  std::unordered_map<ClassPair, PairState, ClassPairHash> states_;
  std::vector<ClassPair> order_;
  AuStats stats_;
};

/// Anti-unifies every co-occurring pair of root-connected classes (a class with
/// itself included) and returns the candidate set P: the union of all pairs'
/// anti-unifiers, minus holes, patterns with fewer than two non-hole nodes, and
/// patterns matching fewer than two root-connected classes. Sorted.
std::vector<Template> run_au_fixpoint(const DerivationGraph& graph, const CoOccur& cooccur, AuOptions options = {},
                                      AuStats* stats = nullptr);

/// Root-connected classes a pattern matches, ascending.
std::vector<EClassId> matching_classes(const DerivationGraph& graph, const Template& pattern);

/// Candidate dump: pattern text, holes, size, matched spans.
nlohmann::json candidates_to_json(const DerivationGraph& graph, const std::vector<Template>& patterns);

}  // namespace chordlearn
