#include "chordlearn/antiunify/cooccur.hpp"

#include <algorithm>
#include <map>

namespace chordlearn {

std::uint64_t CoOccur::key(EClassId a, EClassId b) {
  if (b < a) std::swap(a, b);
  return (std::uint64_t{a.value} << 32) | b.value;
}

bool CoOccur::contains(EClassId a, EClassId b) const {
  auto pa = piece_of_.find(a);
  auto pb = piece_of_.find(b);
  if (pa == piece_of_.end() || pb == piece_of_.end()) return false;
  if (pa->second != pb->second) return true;
  return pairs_.contains(key(a, b));
}

namespace {

// Classes occurring in some tree of `cls`, itself included.
const std::vector<EClassId>& below(const DerivationGraph& graph, EClassId cls,
                                   std::map<EClassId, std::vector<EClassId>>& memo) {
  if (auto it = memo.find(cls); it != memo.end()) return it->second;
  std::vector<EClassId> out{cls};
  for (const auto& node : graph.template_nodes(cls)) {
    if (graph.op_info(node.op).kind != OpKind::Compose) continue;
    for (auto child : node.children) {
      const auto& sub = below(graph, graph.egraph().find(child), memo);
      out.insert(out.end(), sub.begin(), sub.end());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return memo.emplace(cls, std::move(out)).first->second;
}

}  // namespace

// (a, b) share a complete parse iff, at their lowest common node in that parse,
// one is the node's class and the other lies below it, or they lie below two
// different children. Every root-connected class has a complete parse around it,
// and context-freeness lets any of its trees be plugged in.
CoOccur compute_cooccur(const DerivationGraph& graph) {
  CoOccur out;
  const auto& eg = graph.egraph();
  std::map<EClassId, std::vector<EClassId>> memo;
  for (const auto& key : graph.spans()) {
    auto found = graph.find_der(key);
    if (!found || !graph.is_root_connected(*found)) continue;
    auto cls = eg.find(*found);
    if (!out.piece_of_.emplace(cls, key.piece).second) continue;
    out.classes_.push_back(cls);
  }
  std::sort(out.classes_.begin(), out.classes_.end());

  for (auto cls : out.classes_) {
    out.pairs_.insert(CoOccur::key(cls, cls));
    for (const auto& node : graph.template_nodes(cls)) {
      if (graph.op_info(node.op).kind != OpKind::Compose) continue;
      std::vector<const std::vector<EClassId>*> subs;
      for (auto child : node.children) subs.push_back(&below(graph, eg.find(child), memo));
      for (const auto* sub : subs)
        for (auto d : *sub) out.pairs_.insert(CoOccur::key(cls, d));
      for (std::size_t x = 0; x < subs.size(); ++x)
        for (std::size_t y = x + 1; y < subs.size(); ++y)
          for (auto a : *subs[x])
            for (auto b : *subs[y]) out.pairs_.insert(CoOccur::key(a, b));
    }
  }
  return out;
}

}  // namespace chordlearn
