#include "chordlearn/liblearn/select.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace chordlearn {

std::uint64_t Selection::use_cost() const {
  std::uint64_t total = 0;
  for (const auto& p : programs) total += p.cost;
  return total;
}

CostSet fold_corpus(const std::vector<CostSet>& roots, const std::vector<std::uint64_t>& baselines,
                    const SelectOptions& options, const StorageFn& storage) {
  CostSet acc{{{}, 0}};
  std::uint64_t baseline = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    CostSet next;
    for (const auto& p : acc)
      for (const auto& q : roots[i]) {
        auto lib = lib_union(p.lib, q.lib);
        if (lib.size() > options.max_lib) continue;
        next.push_back({std::move(lib), p.cost + q.cost});
      }
    baseline += baselines.at(i);
    if (options.reduce) next = reduce(std::move(next));
    acc = options.key == PruneKey::Objective ? prune_by_objective(std::move(next), options.beam, storage)
                                             : prune(std::move(next), options.beam);
    // The library-free pair is re-seeded after pruning so it always survives.
    if (std::none_of(acc.begin(), acc.end(), [](const CostPair& p) { return p.lib.empty(); }))
      acc.push_back({{}, baseline});
  }
  return acc;
}

namespace {

void collect_fns(const Template& t, std::set<FnId>& out) {
  if (t.kind == TemplateKind::App) out.insert(t.symbol);
  for (const auto& c : t.children) collect_fns(c, out);
}

struct Extractor {
  const DerivationGraph& graph;
  const std::vector<FnId>& allowed;
  std::map<EClassId, std::optional<Refactoring>> memo;

  bool permitted(FnId fn) const { return std::binary_search(allowed.begin(), allowed.end(), fn); }

  const std::optional<Refactoring>& best(EClassId cls) {
    cls = graph.egraph().find(cls);
    if (auto it = memo.find(cls); it != memo.end()) return it->second;
    memo[cls] = std::nullopt;  // guards against cycles
    std::optional<Refactoring> winner;
    for (const auto& node : graph.template_nodes(cls)) {
      const auto& info = graph.op_info(node.op);
      if (info.kind == OpKind::App && !permitted(info.index)) continue;
      std::uint64_t cost = 1;
      std::vector<Template> kids;
      bool ok = true;
      for (auto child : node.children) {
        const auto& sub = best(child);
        if (!sub) {
          ok = false;
          break;
        }
        cost += sub->cost;
        kids.push_back(sub->program);
      }
      if (!ok) continue;
      Template program;
      if (info.kind == OpKind::Pure) program = Template::pure(info.index);
      else if (info.kind == OpKind::Compose) program = Template::compose(info.index, std::move(kids));
      else program = Template::app(info.index, info.routing, std::move(kids));
      if (!winner || cost < winner->cost || (cost == winner->cost && program < winner->program))
        winner = Refactoring{std::move(program), cost};
    }
    return memo[cls] = std::move(winner);
  }
};

}  // namespace

std::optional<Refactoring> extract_class(const DerivationGraph& graph, EClassId cls, const std::vector<FnId>& allowed) {
  auto sorted = allowed;
  std::sort(sorted.begin(), sorted.end());
  Extractor ex{graph, sorted, {}};
  return ex.best(cls);
}

std::optional<Refactoring> extract_refactored(const DerivationGraph& graph, PieceIndex piece,
                                              const std::vector<FnId>& allowed) {
  auto sorted = allowed;
  std::sort(sorted.begin(), sorted.end());
  Extractor ex{graph, sorted, {}};
  std::optional<Refactoring> winner;
  for (auto cls : graph.full_span_classes(piece)) {
    const auto& r = ex.best(cls);
    if (r && (!winner || r->cost < winner->cost || (r->cost == winner->cost && r->program < winner->program)))
      winner = r;
  }
  return winner;
}

Selection select_library(DerivationGraph& graph, StorageModel& storage, CostSetAnalysis& analysis, const SelectOptions& options) {
  std::vector<CostSet> roots;
  std::vector<std::uint64_t> baselines;
  for (PieceIndex p = 0; p < graph.pieces().size(); ++p) {
    if (graph.full_span_classes(p).empty())
      throw UnparsedPieceError("piece '" + graph.piece(p).title + "' has no complete parse");
    auto baseline = 2 * graph.piece(p).chords.size() - 1;
    auto root = analysis.root_set(p);
    root.push_back({{}, baseline});
    roots.push_back(options.reduce ? reduce(std::move(root)) : std::move(root));
    baselines.push_back(baseline);
  }

  StorageFn storage_of = [&](const std::vector<FnId>& lib) { return std::uint64_t{storage.storage(lib)}; };
  auto folded = fold_corpus(roots, baselines, options, storage_of);
  const CostPair* best = nullptr;
  std::uint64_t best_objective = 0;
  for (const auto& pair : folded) {
    auto objective = storage.storage(pair.lib) + pair.cost;
    if (!best || objective < best_objective || (objective == best_objective && cheaper(pair, *best))) {
      best = &pair;
      best_objective = objective;
    }
  }

  Selection out;
  std::set<FnId> used;
  for (PieceIndex p = 0; p < graph.pieces().size(); ++p) {
    auto program = extract_refactored(graph, p, best ? best->lib : std::vector<FnId>{});
    collect_fns(program->program, used);
    out.programs.push_back(std::move(*program));
  }
  std::vector<FnId> chosen = best ? best->lib : std::vector<FnId>{};
  for (std::vector<FnId> frontier(used.begin(), used.end()); !frontier.empty();) {
    auto fn = frontier.back();
    frontier.pop_back();
    std::set<FnId> inner;
    collect_fns(storage.body_program(fn, chosen), inner);
    for (auto g : inner)
      if (used.insert(g).second) frontier.push_back(g);
  }
  out.library.assign(used.begin(), used.end());
  out.storage = storage.storage(out.library);
  return out;
}

Template expand_program(const Template& program, const std::vector<Abstraction>& abstractions) {
  return expand(program, [&](FnId fn) -> const Template& { return abstractions.at(fn).body; });
}

std::optional<std::vector<harmony::ChordLabel>> surface_reading(const DerivationGraph& graph, EClassId cls,
                                                                const Template& derivation) {
  auto key = graph.span_of(cls);
  if (!key) return std::nullopt;
  for (const auto& node : graph.template_nodes(cls)) {
    const auto& info = graph.op_info(node.op);
    if (info.index != derivation.symbol) continue;
    if (derivation.kind == TemplateKind::Pure && info.kind == OpKind::Pure) {
      return std::vector<harmony::ChordLabel>{graph.piece(key->piece).chords.at(key->begin)};
    }
    if (derivation.kind == TemplateKind::Compose && info.kind == OpKind::Compose &&
        node.children.size() == derivation.children.size()) {
      std::vector<harmony::ChordLabel> out;
      bool ok = true;
      for (std::size_t i = 0; i < node.children.size() && ok; ++i) {
        auto part = surface_reading(graph, node.children[i], derivation.children[i]);
        if (!part) ok = false;
        else out.insert(out.end(), part->begin(), part->end());
      }
      if (ok) return out;
    }
  }
  return std::nullopt;
}

}  // namespace chordlearn
