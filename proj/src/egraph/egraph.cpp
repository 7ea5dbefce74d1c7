#include "chordlearn/egraph/egraph.hpp"

#include <algorithm>
#include <stdexcept>

namespace chordlearn::eg {

Symbol SymbolTable::intern(std::string_view name) {
  if (auto it = index_.find(std::string(name)); it != index_.end()) return it->second;
  auto symbol = static_cast<Symbol>(names_.size());
  names_.emplace_back(name);
  index_.emplace(names_.back(), symbol);
  return symbol;
}

std::optional<Symbol> SymbolTable::lookup(std::string_view name) const {
  if (auto it = index_.find(std::string(name)); it != index_.end()) return it->second;
  return std::nullopt;
}

std::size_t ENodeHash::operator()(const ENode& node) const noexcept {
  std::size_t h = node.op * 0x9E3779B97F4A7C15ULL;
  h ^= node.site + 0x9E3779B9 + (h << 6) + (h >> 2);
  for (auto child : node.children) h ^= child.value + 0x9E3779B9 + (h << 6) + (h >> 2);
  return h;
}

ENode EGraph::canonicalize(ENode node) const {
  for (auto& child : node.children) child = find(child);
  return node;
}

EClassId EGraph::add(ENode node) {
  node = canonicalize(std::move(node));
  if (auto it = memo_.find(node); it != memo_.end()) return find(it->second);

  auto id = union_find_.make_set();
  for (auto child : node.children) classes_.at(child.value).parents.emplace_back(node, id);
  classes_.emplace(id.value, EClass{id, {node}, {}});
  memo_.emplace(std::move(node), id);
  return id;
}

EClassId EGraph::add_term(const Term& term) {
  ENode node{term.op, term.site, {}};
  node.children.reserve(term.children.size());
  for (const auto& child : term.children) node.children.push_back(add_term(child));
  return add(std::move(node));
}

std::optional<EClassId> EGraph::lookup(ENode node) const {
  node = canonicalize(std::move(node));
  if (auto it = memo_.find(node); it != memo_.end()) return find(it->second);
  return std::nullopt;
}

const EClass& EGraph::eclass(EClassId id) const { return classes_.at(find(id).value); }

bool EGraph::unite(EClassId a, EClassId b) {
  auto ra = union_find_.find_compress(a);
  auto rb = union_find_.find_compress(b);
  if (ra == rb) return false;

  auto& ca = classes_.at(ra.value);
  auto& cb = classes_.at(rb.value);
  // The larger class absorbs the smaller; ties keep the older id.
  auto weight = [](const EClass& c) { return c.nodes.size() + c.parents.size(); };
  if (weight(ca) < weight(cb) || (weight(ca) == weight(cb) && rb < ra)) std::swap(ra, rb);

  auto& root = classes_.at(ra.value);
  auto other = std::move(classes_.at(rb.value));
  classes_.erase(rb.value);
  union_find_.link(ra, rb);

  root.nodes.insert(root.nodes.end(), other.nodes.begin(), other.nodes.end());
  root.parents.insert(root.parents.end(), other.parents.begin(), other.parents.end());
  for (auto& slot : slots_) slot->merge(ra.value, rb.value);
  pending_.push_back(ra);
  return true;
}

void EGraph::repair(EClassId id) {
  id = find(id);
  auto parents = std::move(classes_.at(id.value).parents);
  for (auto& [node, cls] : parents) {
    memo_.erase(node);
    node = canonicalize(std::move(node));
    memo_[node] = find(cls);
  }

  std::unordered_map<ENode, EClassId, ENodeHash> unique;
  for (auto& [node, cls] : parents) {
    if (auto it = unique.find(node); it != unique.end()) unite(it->second, cls);
    unique[node] = find(cls);
  }

  // `id` may itself have been absorbed by the unions above.
  auto& target = classes_.at(find(id).value).parents;
  for (auto& [node, cls] : unique) target.emplace_back(node, cls);
}

void EGraph::rebuild() {
  while (!pending_.empty()) {
    auto todo = std::move(pending_);
    pending_.clear();
    for (auto& id : todo) id = find(id);
    std::sort(todo.begin(), todo.end());
    todo.erase(std::unique(todo.begin(), todo.end()), todo.end());
    for (auto id : todo) repair(id);
  }

  for (auto& [key, cls] : classes_) {
    for (auto& node : cls.nodes) node = canonicalize(std::move(node));
    std::sort(cls.nodes.begin(), cls.nodes.end());
    cls.nodes.erase(std::unique(cls.nodes.begin(), cls.nodes.end()), cls.nodes.end());
  }
}

std::vector<EClassId> EGraph::class_ids() const {
  std::vector<EClassId> ids;
  ids.reserve(classes_.size());
  for (const auto& [key, cls] : classes_) ids.push_back(EClassId{key});
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace chordlearn::eg
