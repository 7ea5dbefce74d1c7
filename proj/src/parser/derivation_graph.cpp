#include "chordlearn/parser/derivation_graph.hpp"

#include <algorithm>

namespace chordlearn {

using eg::Row;
using eg::RuleContext;
using eg::Table;
using eg::Value;

DerivationGraph::DerivationGraph(harmony::Grammar grammar) : grammar_(std::move(grammar)) {
  db_.declare(tables::kIsWord, 3);
  db_.declare(tables::kIsPhrase, 4);
  db_.declare(tables::kSplit, 8);
  db_.declare(tables::kRootConnected, 4);
  der_op_ = intern_op("Der", {OpKind::Der, 0, {}});
  root_slot_ = egraph().add_slot<eg::BoolOr>("root_connected");
}

Symbol DerivationGraph::intern_op(const std::string& name, OpInfo info) {
  auto symbol = egraph().symbols().intern(name);
  if (symbol >= op_info_.size()) op_info_.resize(symbol + 1);
  op_info_[symbol] = std::move(info);
  return symbol;
}

Symbol DerivationGraph::pure_op(RuleId rule) { return intern_op("Pure:" + rule_name(rule), {OpKind::Pure, rule, {}}); }

Symbol DerivationGraph::compose_op(RuleId rule) {
  return intern_op("Compose:" + rule_name(rule), {OpKind::Compose, rule, {}});
}

Symbol DerivationGraph::app_op(FnId fn, const std::vector<std::uint32_t>& routing) {
  return intern_op("App:f" + std::to_string(fn) + render_routing(routing), {OpKind::App, fn, routing});
}

bool DerivationGraph::is_template_op(Symbol op) const { return op_info_.at(op).kind != OpKind::Der; }

PieceIndex DerivationGraph::add_piece(Piece piece) {
  auto index = static_cast<PieceIndex>(pieces_.size());
  auto& words = db_.table(tables::kIsWord);
  for (std::size_t i = 0; i < piece.chords.size(); ++i)
    words.insert({index, intern(piece.chords[i]), static_cast<Value>(i)});
  pieces_.push_back(std::move(piece));
  return index;
}

LabelId DerivationGraph::intern(const harmony::ChordLabel& label) {
  auto [it, inserted] = label_index_.try_emplace(label, static_cast<LabelId>(labels_.size()));
  if (inserted) labels_.push_back(label);
  return it->second;
}

ENode DerivationGraph::der_node(const SpanKey& key) {
  auto [it, inserted] = span_index_.try_emplace(key, static_cast<std::uint32_t>(spans_.size()));
  if (inserted) spans_.push_back(key);
  return ENode{der_op_, it->second + 1, {}};
}

std::optional<EClassId> DerivationGraph::find_der(const SpanKey& key) const {
  auto it = span_index_.find(key);
  if (it == span_index_.end()) return std::nullopt;
  auto cls = egraph().lookup(ENode{der_op_, it->second + 1, {}});
  if (!cls) return std::nullopt;
  return egraph().find(*cls);
}

std::optional<SpanKey> DerivationGraph::span_of(EClassId cls) const {
  for (const auto& node : egraph().eclass(egraph().find(cls)).nodes)
    if (node.op == der_op_) return span_at_site(node.site);
  return std::nullopt;
}

std::vector<SpanKey> DerivationGraph::full_spans(PieceIndex p) const {
  std::vector<SpanKey> out;
  auto n = static_cast<std::uint32_t>(pieces_.at(p).chords.size());
  for (const auto& key : spans_)
    if (key.piece == p && key.begin == 0 && key.end == n && find_der(key)) out.push_back(key);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<EClassId> DerivationGraph::full_span_classes(PieceIndex p) const {
  std::vector<EClassId> out;
  for (const auto& key : full_spans(p)) out.push_back(*find_der(key));
  return out;
}

bool DerivationGraph::expands(RuleId rule, LabelId left, LabelId right) {
  std::uint64_t key = (static_cast<std::uint64_t>(rule) << 42) | (static_cast<std::uint64_t>(left) << 21) | right;
  auto [it, inserted] = expands_cache_.try_emplace(key, false);
  if (inserted) it->second = grammar_.check(rule, labels_.at(left), labels_.at(right));
  return it->second;
}

bool DerivationGraph::is_root_connected(EClassId cls) const {
  const bool* value = egraph().slot(root_slot_, cls);
  return value && *value;
}

std::vector<ENode> DerivationGraph::template_nodes(EClassId cls) const {
  std::vector<ENode> out;
  for (const auto& node : egraph().eclass(egraph().find(cls)).nodes)
    if (node.op != der_op_) out.push_back(node);
  return out;
}

std::string DerivationGraph::describe(const SpanKey& key) const {
  return pieces_.at(key.piece).title + "[" + labels_.at(key.head).to_string() + " " + std::to_string(key.begin) + ":" +
         std::to_string(key.end) + "]";
}

Naming rule_naming(const harmony::Grammar& grammar) {
  // By value: the naming outlives the grammar in learn results.
  std::vector<std::string> ids;
  for (RuleId r = 0; r < grammar.rules().size(); ++r) ids.push_back(grammar.rule(r).id);
  return Naming{[ids = std::move(ids)](RuleId r) { return ids.at(r); },
                [](FnId f) { return "f" + std::to_string(f); }};
}

namespace {

SpanKey key_of(const Row& phrase) {
  return SpanKey{static_cast<PieceIndex>(phrase[0]), static_cast<LabelId>(phrase[1]),
                 static_cast<std::uint32_t>(phrase[2]), static_cast<std::uint32_t>(phrase[3])};
}

void combine(DerivationGraph& graph, RuleContext& ctx, const Row& left, const Row& right) {
  auto& phrases = graph.db().table(tables::kIsPhrase);
  auto& splits = graph.db().table(tables::kSplit);
  auto y = static_cast<LabelId>(left[1]);
  auto z = static_cast<LabelId>(right[1]);
  for (auto rule : graph.grammar().binary_rules()) {
    if (!graph.expands(rule, y, z)) continue;
    auto x = graph.grammar().rule(rule).head == harmony::Side::Left ? y : z;
    SpanKey parent{static_cast<PieceIndex>(left[0]), x, static_cast<std::uint32_t>(left[2]),
                   static_cast<std::uint32_t>(right[3])};
    ctx.insert(phrases, {left[0], x, left[2], right[3]});
    ctx.insert(splits, {left[0], x, left[2], right[3], y, z, left[3], rule});
    auto cy = *graph.find_der(key_of(left));
    auto cz = *graph.find_der(key_of(right));
    auto compose = ctx.add(ENode{graph.compose_op(rule), 0, {cy, cz}});
    ctx.unite(compose, ctx.add(graph.der_node(parent)));
  }
}

}  // namespace

eg::SaturationReport cyk_saturate(DerivationGraph& graph, eg::RunOptions options) {
  eg::Ruleset rules{"cyk", {}};

  rules.rules.push_back({"terminate", [&graph](RuleContext& ctx) {
                           auto& words = graph.db().table(tables::kIsWord);
                           auto& phrases = graph.db().table(tables::kIsPhrase);
                           auto window = ctx.recent(words);
                           for (auto r = window.begin; r < window.end; ++r) {
                             const Row word = words.row(r);
                             auto label = static_cast<LabelId>(word[1]);
                             for (auto rule : graph.grammar().termination_rules()) {
                               if (!graph.grammar().terminates(rule, graph.label(label))) continue;
                               SpanKey key{static_cast<PieceIndex>(word[0]), label, static_cast<std::uint32_t>(word[2]),
                                           static_cast<std::uint32_t>(word[2] + 1)};
                               ctx.insert(phrases, {word[0], word[1], word[2], word[2] + 1});
                               auto der = ctx.add(graph.der_node(key));
                               ctx.unite(ctx.add(ENode{graph.pure_op(rule), graph.site_of(key), {}}), der);
                             }
                           }
                         }});

  rules.rules.push_back({"compose", [&graph](RuleContext& ctx) {
                           auto& phrases = graph.db().table(tables::kIsPhrase);
                           auto window = ctx.recent(phrases);
                           for (auto r = window.begin; r < window.end; ++r) {
                             const Row a = phrases.row(r);
                             // a as the left child
                             for (auto other : ctx.with(phrases, 2, a[3])) {
                               const Row b = phrases.row(other);
                               if (b[0] == a[0]) combine(graph, ctx, a, b);
                             }
                             // a as the right child; pairs with both sides recent were handled above
                             for (auto other : ctx.with(phrases, 3, a[2])) {
                               if (ctx.is_recent(phrases, other)) continue;
                               const Row b = phrases.row(other);
                               if (b[0] == a[0]) combine(graph, ctx, b, a);
                             }
                           }
                         }});

  return eg::run_to_fixpoint(graph.db(), rules, options);
}

eg::SaturationReport filter_root_connected(DerivationGraph& graph, eg::RunOptions options) {
  eg::Ruleset rules{"root_connected", {}};

  rules.rules.push_back({"full_span", [&graph](RuleContext& ctx) {
                           auto& phrases = graph.db().table(tables::kIsPhrase);
                           auto& marked = graph.db().table(tables::kRootConnected);
                           auto window = ctx.recent(phrases);
                           for (auto r = window.begin; r < window.end; ++r) {
                             const Row& row = phrases.row(r);
                             auto n = graph.piece(static_cast<PieceIndex>(row[0])).chords.size();
                             if (row[2] == 0 && row[3] == static_cast<Value>(n)) ctx.insert(marked, row);
                           }
                         }});

  rules.rules.push_back({"propagate", [&graph](RuleContext& ctx) {
                           auto& splits = graph.db().table(tables::kSplit);
                           auto& marked = graph.db().table(tables::kRootConnected);
                           auto window = ctx.recent(marked);
                           for (auto r = window.begin; r < window.end; ++r) {
                             const Row parent = marked.row(r);
                             for (auto s : ctx.with(splits, 2, parent[2])) {
                               const Row& split = splits.row(s);  // (p, x, i, k, y, z, j, rule)
                               if (split[0] != parent[0] || split[1] != parent[1] || split[3] != parent[3]) continue;
                               ctx.insert(marked, {split[0], split[4], split[2], split[6]});
                               ctx.insert(marked, {split[0], split[5], split[6], split[3]});
                             }
                           }
                         }});

  auto report = eg::run_to_fixpoint(graph.db(), rules, options);
  for (const auto& row : graph.db().table(tables::kRootConnected).rows())
    if (auto cls = graph.find_der(key_of(row))) graph.egraph().update_slot(graph.root_slot(), *cls, true);
  return report;
}

BigCount DerivationCounter::count(EClassId cls) {
  cls = graph_.egraph().find(cls);
  if (auto it = memo_.find(cls); it != memo_.end()) return it->second;
  if (on_stack_[cls]) throw CycleError("derivation cycle through e-class " + std::to_string(cls.value));
  on_stack_[cls] = true;
  BigCount total = 0;
  for (const auto& node : graph_.template_nodes(cls)) {
    auto kind = graph_.op_info(node.op).kind;
    if (kind == OpKind::Pure) {
      total += 1;
    } else if (kind == OpKind::Compose) {
      BigCount product = 1;
      for (auto child : node.children) product *= count(child);
      total += product;
    }
  }
  on_stack_[cls] = false;
  memo_.emplace(cls, total);
  return total;
}

BigCount count_derivations(const DerivationGraph& graph, EClassId cls) { return DerivationCounter(graph).count(cls); }

BigCount piece_derivation_count(const DerivationGraph& graph, PieceIndex p) {
  DerivationCounter counter(graph);
  BigCount total = 0;
  for (auto cls : graph.full_span_classes(p)) total += counter.count(cls);
  return total;
}

namespace {

const std::vector<Template>& enumerate_class(const DerivationGraph& graph, EClassId cls, std::size_t limit,
                                             std::unordered_map<EClassId, std::vector<Template>>& memo) {
  cls = graph.egraph().find(cls);
  if (auto it = memo.find(cls); it != memo.end()) return it->second;
  std::vector<Template> out;
  for (const auto& node : graph.template_nodes(cls)) {
    const auto& info = graph.op_info(node.op);
    if (info.kind == OpKind::Pure) {
      out.push_back(Template::pure(info.index));
    } else if (info.kind == OpKind::Compose && node.children.size() == 2) {
      const auto& lefts = enumerate_class(graph, node.children[0], limit, memo);
      const auto& rights = enumerate_class(graph, node.children[1], limit, memo);
      for (const auto& l : lefts)
        for (const auto& r : rights) {
          if (out.size() >= limit) break;
          out.push_back(Template::compose(info.index, {l, r}));
        }
    }
    if (out.size() >= limit) break;
  }
  return memo.emplace(cls, std::move(out)).first->second;
}

}  // namespace

std::vector<Template> enumerate_derivations(const DerivationGraph& graph, EClassId cls, std::size_t limit) {
  std::unordered_map<EClassId, std::vector<Template>> memo;
  return enumerate_class(graph, cls, limit, memo);
}

}  // namespace chordlearn
