#include "chordlearn/liblearn/costset.hpp"

#include <algorithm>

namespace chordlearn {

bool cheaper(const CostPair& a, const CostPair& b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  if (a.lib.size() != b.lib.size()) return a.lib.size() < b.lib.size();
  return a.lib < b.lib;
}

namespace {

void normalize(CostSet& set) {
  std::sort(set.begin(), set.end(), cheaper);
  set.erase(std::unique(set.begin(), set.end()), set.end());
}

}  // namespace

CostSet reduce(CostSet set) {
  normalize(set);
  // After sorting, a dominating pair always comes before the pairs it dominates.
  CostSet kept;
  for (auto& q : set) {
    bool dominated = std::any_of(kept.begin(), kept.end(), [&](const CostPair& p) {
      return p.cost <= q.cost && std::includes(q.lib.begin(), q.lib.end(), p.lib.begin(), p.lib.end());
    });
    if (!dominated) kept.push_back(std::move(q));
  }
  return kept;
}

CostSet prune(CostSet set, std::size_t beam) {
  normalize(set);
  if (beam != 0 && set.size() > beam) set.resize(beam);
  return set;
}

CostSet prune_by_objective(CostSet set, std::size_t beam, const StorageFn& storage) {
  normalize(set);
  if (beam == 0 || set.size() <= beam) return set;
  auto objective = [&](const CostPair& p) { return p.cost + storage(p.lib); };
  std::stable_sort(set.begin(), set.end(),
                   [&](const CostPair& a, const CostPair& b) { return objective(a) < objective(b); });
  set.resize(beam);
  std::sort(set.begin(), set.end(), cheaper);
  return set;
}

std::vector<FnId> lib_union(const std::vector<FnId>& a, const std::vector<FnId>& b) {
  std::vector<FnId> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

CostSetAnalysis::CostSetAnalysis(const DerivationGraph& graph, CostOptions options)
    : graph_(graph), options_(options) {}

CostSet CostSetAnalysis::finish(CostSet set) const {
  if (options_.reduce) set = reduce(std::move(set));
  if (options_.key == PruneKey::Objective) return prune_by_objective(std::move(set), options_.beam, options_.storage);
  return prune(std::move(set), options_.beam);
}

CostSet CostSetAnalysis::node_set(const ENode& node) {
  const auto& info = graph_.op_info(node.op);
  CostSet acc;
  if (info.kind == OpKind::App) {
    acc.push_back({{info.index}, 1});
  } else {
    acc.push_back({{}, 1});
  }
  if (info.kind == OpKind::Pure) return acc;

  for (auto child : node.children) {
    const auto& sub = of(child);
    CostSet next;
    for (const auto& p : acc)
      for (const auto& q : sub) {
        auto lib = lib_union(p.lib, q.lib);
        if (lib.size() > options_.max_lib) continue;
        next.push_back({std::move(lib), p.cost + q.cost});
      }
    acc = std::move(next);
    // Partial products are reduced too; dominance is preserved by adding the
    // same remaining children to both pairs.
    if (options_.reduce) acc = reduce(std::move(acc));
  }
  return acc;
}

const CostSet& CostSetAnalysis::of(EClassId cls) {
  cls = graph_.egraph().find(cls);
  if (auto it = memo_.find(cls); it != memo_.end()) return it->second;
  if (on_stack_[cls]) throw CycleError("cost analysis reached a cycle at class " + std::to_string(cls.value));
  on_stack_[cls] = true;
  CostSet all;
  for (const auto& node : graph_.template_nodes(cls)) {
    auto set = node_set(node);
    all.insert(all.end(), std::make_move_iterator(set.begin()), std::make_move_iterator(set.end()));
  }
  on_stack_[cls] = false;
  return memo_.emplace(cls, finish(std::move(all))).first->second;
}

CostSet CostSetAnalysis::root_set(PieceIndex piece) {
  CostSet all;
  for (auto cls : graph_.full_span_classes(piece)) {
    const auto& set = of(cls);
    all.insert(all.end(), set.begin(), set.end());
  }
  return finish(std::move(all));
}

}  // namespace chordlearn
