#include "chordlearn/antiunify/antiunify.hpp"

#include <algorithm>
#include <set>

namespace chordlearn {

NodeAu anti_unify_nodes(const DerivationGraph& graph, PatternBank& bank, const ENode& x, const ENode& y,
                        const FinalizedLookup& finalized) {
  NodeAu out;
  const auto& ix = graph.op_info(x.op);
  const auto& iy = graph.op_info(y.op);
  if (ix.kind != iy.kind || ix.index != iy.index || x.children.size() != y.children.size() ||
      (ix.kind != OpKind::Pure && ix.kind != OpKind::Compose)) {
    out.patterns.push_back(bank.hole());
    return out;
  }
  if (ix.kind == OpKind::Pure) {
    out.patterns.push_back(bank.pure(ix.index));
    return out;
  }

  const auto& eg = graph.egraph();
  std::vector<const std::vector<PatternId>*> kids;
  for (std::size_t i = 0; i < x.children.size(); ++i) {
    auto pair = ClassPair::of(eg.find(x.children[i]), eg.find(y.children[i]));
    const auto* set = finalized(pair);
    if (!set) {
      out.ready = false;
      out.waiting.push_back(pair);
    }
    kids.push_back(set);
  }
  if (!out.ready) return out;

  std::vector<std::vector<PatternId>> partial{{}};
  for (const auto* set : kids) {
    std::vector<std::vector<PatternId>> next;
    next.reserve(partial.size() * set->size());
    for (const auto& prefix : partial)
      for (auto p : *set) {
        auto joined = prefix;
        joined.push_back(p);
        next.push_back(std::move(joined));
      }
    partial = std::move(next);
  }
  for (auto& children : partial) out.patterns.push_back(bank.compose(ix.index, std::move(children)));
  return out;
}

AntiUnifier::AntiUnifier(const DerivationGraph& graph, AuOptions options) : graph_(graph), options_(options) {}

std::vector<ENode> AntiUnifier::derivation_nodes(EClassId cls) const {
  std::vector<ENode> out;
  for (auto& node : graph_.template_nodes(cls)) {
    auto kind = graph_.op_info(node.op).kind;
    if (kind == OpKind::Pure || kind == OpKind::Compose) out.push_back(std::move(node));
  }
  return out;
}

AntiUnifier::PairState& AntiUnifier::state(ClassPair pair) {
  auto [it, inserted] = states_.try_emplace(pair);
  if (inserted) {
    auto& s = it->second;
    s.left = derivation_nodes(pair.a);
    s.right = derivation_nodes(pair.b);
    s.remaining = s.left.size() * s.right.size();
    s.done.assign(s.remaining, false);
    order_.push_back(pair);
    ++stats_.pairs;
  }
  return it->second;
}

void AntiUnifier::request(EClassId a, EClassId b) {
  const auto& eg = graph_.egraph();
  state(ClassPair::of(eg.find(a), eg.find(b)));
}

void AntiUnifier::add_candidates(PairState& s, const std::vector<PatternId>& patterns) {
  if (s.finalized) {
    stats_.late_additions += patterns.size();
    return;
  }
  s.candidates.insert(s.candidates.end(), patterns.begin(), patterns.end());
}

const std::vector<PatternId>* AntiUnifier::candidate_ids(ClassPair pair) const {
  auto it = states_.find(pair);
  if (it == states_.end() || !it->second.finalized) return nullptr;
  return &it->second.candidates;
}

bool AntiUnifier::finalized(EClassId a, EClassId b) const {
  const auto& eg = graph_.egraph();
  return candidate_ids(ClassPair::of(eg.find(a), eg.find(b))) != nullptr;
}

std::vector<Template> AntiUnifier::candidates(EClassId a, EClassId b) const {
  const auto& eg = graph_.egraph();
  std::vector<Template> out;
  if (const auto* ids = candidate_ids(ClassPair::of(eg.find(a), eg.find(b))))
    for (auto id : *ids) out.push_back(bank_.materialize(id));
  std::sort(out.begin(), out.end());
  return out;
}

void AntiUnifier::run() {
  FinalizedLookup lookup = [this](ClassPair pair) { return candidate_ids(pair); };
  for (;;) {
    if (stats_.rounds >= options_.iteration_cap) {
      stats_.converged = false;
      return;
    }
    ++stats_.rounds;
    bool progress = false;

    // Node phase: only node pairs whose child pairs were finalized in earlier rounds.
    std::vector<ClassPair> open;
    for (const auto& pair : order_)
      if (!states_.at(pair).finalized) open.push_back(pair);
    if (options_.order == AuOrder::Reverse) std::reverse(open.begin(), open.end());
    for (const auto& pair : open) {
      auto& s = states_.at(pair);
      for (std::size_t i = 0; i < s.left.size(); ++i)
        for (std::size_t j = 0; j < s.right.size(); ++j) {
          auto slot = i * s.right.size() + j;
          if (s.done[slot]) continue;
          auto au = anti_unify_nodes(graph_, bank_, s.left[i], s.right[j], lookup);
          if (!au.ready) {
            for (const auto& w : au.waiting)
              if (!states_.contains(w)) {
                state(w);
                progress = true;
              }
            continue;
          }
          add_candidates(s, au.patterns);
          s.done[slot] = true;
          --s.remaining;
          ++stats_.node_pairs;
          progress = true;
        }
    }

    // Class phase.
    bool all_final = true;
    for (const auto& pair : order_) {
      auto& s = states_.at(pair);
      if (s.finalized) continue;
      if (s.remaining == 0) {
        std::sort(s.candidates.begin(), s.candidates.end());
        s.candidates.erase(std::unique(s.candidates.begin(), s.candidates.end()), s.candidates.end());
        s.finalized = true;
        progress = true;
      } else {
        all_final = false;
      }
    }
    if (all_final) return;
    if (!progress) {
      stats_.converged = false;
      return;
    }
  }
}

std::vector<EClassId> matching_classes(const DerivationGraph& graph, const Template& pattern) {
  std::set<EClassId> out;
  for (const auto& key : graph.spans()) {
    auto cls = graph.find_der(key);
    if (!cls || !graph.is_root_connected(*cls)) continue;
    if (!match_pattern(graph, pattern, *cls).empty()) out.insert(graph.egraph().find(*cls));
  }
  return {out.begin(), out.end()};
}

std::vector<Template> run_au_fixpoint(const DerivationGraph& graph, const CoOccur& cooccur, AuOptions options,
                                      AuStats* stats) {
  AntiUnifier au(graph, options);
  const auto& classes = cooccur.classes();
  std::vector<ClassPair> seeds;
  for (std::size_t x = 0; x < classes.size(); ++x)
    for (std::size_t y = x; y < classes.size(); ++y)
      if (cooccur.contains(classes[x], classes[y])) {
        seeds.push_back(ClassPair::of(classes[x], classes[y]));
        au.request(classes[x], classes[y]);
      }
  au.run();
  if (stats) *stats = au.stats();

  std::set<PatternId> pool;
  for (const auto& pair : seeds)
    if (const auto* ids = au.candidate_ids(pair))
      for (auto id : *ids)
        if (au.bank().solid_size(id) >= 2) pool.insert(id);

  std::vector<Template> out;
  for (auto id : pool) {
    auto t = au.bank().materialize(id);
    if (matching_classes(graph, t).size() >= 2) out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end());
  return out;
}

nlohmann::json candidates_to_json(const DerivationGraph& graph, const std::vector<Template>& patterns) {
  auto naming = rule_naming(graph.grammar());
  auto out = nlohmann::json::array();
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    const auto& p = patterns[i];
    auto spans = nlohmann::json::array();
    auto classes = matching_classes(graph, p);
    for (auto cls : classes) spans.push_back(graph.describe(*graph.span_of(cls)));
    out.push_back({{"index", i},
                   {"pattern", to_sexpr(p, naming)},
                   {"holes", p.hole_count()},
                   {"size", p.size()},
                   {"matches", classes.size()},
                   {"spans", spans}});
  }
  return out;
}

}  // namespace chordlearn
