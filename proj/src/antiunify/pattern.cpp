#include "chordlearn/antiunify/pattern.hpp"

#include <algorithm>

namespace chordlearn {

PatternBank::PatternBank() { nodes_.push_back({TemplateKind::Id, 0, {}, 0}); }

PatternId PatternBank::add(Node node) {
  Key key{node.kind, node.symbol, node.children};
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  auto id = static_cast<PatternId>(nodes_.size());
  nodes_.push_back(std::move(node));
  index_.emplace(std::move(key), id);
  return id;
}

PatternId PatternBank::pure(RuleId rule) { return add({TemplateKind::Pure, rule, {}, 1}); }

PatternId PatternBank::compose(RuleId rule, std::vector<PatternId> children) {
  std::size_t solid = 1;
  for (auto c : children) solid += nodes_.at(c).solid;
  return add({TemplateKind::Compose, rule, std::move(children), solid});
}

PatternId PatternBank::intern(const Template& t) {
  switch (t.kind) {
    case TemplateKind::Id:
      return hole();
    case TemplateKind::Pure:
      return pure(t.symbol);
    case TemplateKind::Compose: {
      std::vector<PatternId> kids;
      for (const auto& c : t.children) kids.push_back(intern(c));
      return compose(t.symbol, std::move(kids));
    }
    case TemplateKind::App:
      break;
  }
  throw std::invalid_argument("patterns cannot contain applications");
}

Template PatternBank::materialize(PatternId id) const {
  const auto& node = nodes_.at(id);
  Template t{node.kind, node.symbol, {}, {}};
  for (auto c : node.children) t.children.push_back(materialize(c));
  return t;
}

std::size_t solid_size(const Template& t) {
  if (t.kind == TemplateKind::Id) return 0;
  std::size_t n = 1;
  for (const auto& c : t.children) n += solid_size(c);
  return n;
}

bool match_template(const Template& pattern, const Template& t, std::vector<const Template*>& bindings) {
  if (pattern.kind == TemplateKind::Id) {
    bindings.push_back(&t);
    return true;
  }
  if (pattern.kind != t.kind || pattern.symbol != t.symbol || pattern.children.size() != t.children.size() ||
      pattern.routing != t.routing)
    return false;
  for (std::size_t i = 0; i < t.children.size(); ++i)
    if (!match_template(pattern.children[i], t.children[i], bindings)) return false;
  return true;
}

namespace {

void match_into(const DerivationGraph& graph, const Template& pattern, EClassId cls,
                std::vector<std::vector<EClassId>>& out) {
  const auto& eg = graph.egraph();
  cls = eg.find(cls);
  if (pattern.kind == TemplateKind::Id) {
    out.push_back({cls});
    return;
  }
  for (const auto& node : graph.template_nodes(cls)) {
    const auto& info = graph.op_info(node.op);
    if (info.index != pattern.symbol) continue;
    if (pattern.kind == TemplateKind::Pure && info.kind == OpKind::Pure) {
      out.push_back({});
    } else if (pattern.kind == TemplateKind::Compose && info.kind == OpKind::Compose &&
               node.children.size() == pattern.children.size()) {
      std::vector<std::vector<EClassId>> partial{{}};
      for (std::size_t i = 0; i < node.children.size() && !partial.empty(); ++i) {
        std::vector<std::vector<EClassId>> sub;
        match_into(graph, pattern.children[i], node.children[i], sub);
        std::vector<std::vector<EClassId>> next;
        for (const auto& prefix : partial)
          for (const auto& tail : sub) {
            auto joined = prefix;
            joined.insert(joined.end(), tail.begin(), tail.end());
            next.push_back(std::move(joined));
          }
        partial = std::move(next);
      }
      for (auto& m : partial) out.push_back(std::move(m));
    }
  }
}

}  // namespace

std::vector<std::vector<EClassId>> match_pattern(const DerivationGraph& graph, const Template& pattern, EClassId cls) {
  std::vector<std::vector<EClassId>> out;
  match_into(graph, pattern, cls, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace chordlearn
