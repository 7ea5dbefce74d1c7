#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "chordlearn/egraph/database.hpp"
#include "chordlearn/harmony/grammar.hpp"
#include "chordlearn/parser/corpus.hpp"
#include "chordlearn/parser/template.hpp"

namespace chordlearn {

using eg::EClassId;
using eg::ENode;
using eg::Symbol;
using BigCount = boost::multiprecision::cpp_int;

using PieceIndex = std::uint32_t;
using LabelId = std::uint32_t;

/// (piece, head, i, j): one derivation class per headed span, end-exclusive.
struct SpanKey {
  PieceIndex piece = 0;
  LabelId head = 0;
  std::uint32_t begin = 0;
  std::uint32_t end = 0;

  std::uint32_t length() const { return end - begin; }
  friend auto operator<=>(const SpanKey&, const SpanKey&) = default;
};

enum class OpKind : std::uint8_t { Der, Pure, Compose, App };

struct OpInfo {
  OpKind kind = OpKind::Der;
  std::uint32_t index = 0;  // rule id, or abstraction id for App
  std::vector<std::uint32_t> routing;
};

/// Table names used by the parsing rules.
namespace tables {
inline constexpr const char* kIsWord = "IsWord";              // (piece, label, i)
inline constexpr const char* kIsPhrase = "IsPhrase";          // (piece, label, i, j)
inline constexpr const char* kSplit = "Split";                // (piece, x, i, k, y, z, j, rule)
inline constexpr const char* kRootConnected = "RootConnected";  // (piece, label, i, j)
}  // namespace tables

/// The shared e-graph for a corpus. Every headed span owns a class identified by a
/// `Der` node whose site tag is the span's index; grammar derivations of the span
/// (`Pure` leaves and `Compose` nodes over child span classes) are unioned into it.
class DerivationGraph {
 public:
  explicit DerivationGraph(harmony::Grammar grammar);
  DerivationGraph(DerivationGraph&&) = default;

  const harmony::Grammar& grammar() const { return grammar_; }
  eg::Database& db() { return db_; }
  const eg::Database& db() const { return db_; }
  eg::EGraph& egraph() { return db_.egraph(); }
  const eg::EGraph& egraph() const { return db_.egraph(); }

  /// Adds the piece and its IsWord facts (one per position).
  PieceIndex add_piece(Piece piece);
  const std::vector<Piece>& pieces() const { return pieces_; }
  const Piece& piece(PieceIndex p) const { return pieces_.at(p); }

  LabelId intern(const harmony::ChordLabel& label);
  const harmony::ChordLabel& label(LabelId id) const { return labels_.at(id); }

  Symbol der_op() const { return der_op_; }
  Symbol pure_op(RuleId rule);
  Symbol compose_op(RuleId rule);
  Symbol app_op(FnId fn, const std::vector<std::uint32_t>& routing);
  const OpInfo& op_info(Symbol op) const { return op_info_.at(op); }
  bool is_template_op(Symbol op) const;

  /// The Der marker node of a span (registers the span on first use).
  ENode der_node(const SpanKey& key);
  std::optional<EClassId> find_der(const SpanKey& key) const;
  /// The span a class stands for, if it contains a Der node.
  std::optional<SpanKey> span_of(EClassId cls) const;
  /// Every registered span, in registration order.
  const std::vector<SpanKey>& spans() const { return spans_; }
  std::uint32_t site_of(const SpanKey& key) const { return span_index_.at(key) + 1; }
  const SpanKey& span_at_site(std::uint32_t site) const { return spans_.at(site - 1); }

  /// Canonical classes of spans (p, *, 0, n).
  std::vector<EClassId> full_span_classes(PieceIndex p) const;
  std::vector<SpanKey> full_spans(PieceIndex p) const;

  /// Memoized `grammar.check` over interned labels.
  bool expands(RuleId rule, LabelId left, LabelId right);

  /// Root-connectedness slot (set by `filter_root_connected`).
  eg::SlotKey<eg::BoolOr> root_slot() const { return root_slot_; }
  bool is_root_connected(EClassId cls) const;

  /// Template (Pure/Compose/App) nodes of a class, skipping the Der marker.
  std::vector<ENode> template_nodes(EClassId cls) const;

  std::string rule_name(RuleId rule) const { return grammar_.rule(rule).id; }
  std::string describe(const SpanKey& key) const;

 private:
  harmony::Grammar grammar_;
  eg::Database db_;
  std::vector<Piece> pieces_;
  std::vector<harmony::ChordLabel> labels_;
  std::map<harmony::ChordLabel, LabelId> label_index_;
  std::vector<OpInfo> op_info_;
  Symbol der_op_ = 0;
  std::vector<SpanKey> spans_;
  std::map<SpanKey, std::uint32_t> span_index_;
  std::unordered_map<std::uint64_t, bool> expands_cache_;
  eg::SlotKey<eg::BoolOr> root_slot_{};

  Symbol intern_op(const std::string& name, OpInfo info);
};

/// Runs the base and inductive CYK rules to a fixpoint over every added piece.
eg::SaturationReport cyk_saturate(DerivationGraph& graph, eg::RunOptions options = {});

/// Marks every span that takes part in some complete parse (top-down from the full spans).
eg::SaturationReport filter_root_connected(DerivationGraph& graph, eg::RunOptions options = {});

class CycleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of distinct primitive derivation trees a class represents.
/// Only Pure/Compose nodes are counted. Throws CycleError on a cyclic class.
class DerivationCounter {
 public:
  explicit DerivationCounter(const DerivationGraph& graph) : graph_(graph) {}
  BigCount count(EClassId cls);

 private:
  const DerivationGraph& graph_;
  std::unordered_map<EClassId, BigCount> memo_;
  std::unordered_map<EClassId, bool> on_stack_;
};

BigCount count_derivations(const DerivationGraph& graph, EClassId cls);
/// Sum over the full-span classes of piece `p`.
BigCount piece_derivation_count(const DerivationGraph& graph, PieceIndex p);

/// Enumerates primitive derivation trees of a class (at most `limit`).
std::vector<Template> enumerate_derivations(const DerivationGraph& graph, EClassId cls, std::size_t limit = 1'000'000);

/// Grammar-level naming for printing templates.
Naming rule_naming(const harmony::Grammar& grammar);

}  // namespace chordlearn
