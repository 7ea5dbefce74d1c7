#pragma once

#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "chordlearn/parser/derivation_graph.hpp"
#include "chordlearn/parser/template.hpp"

namespace chordlearn {

using PatternId = std::uint32_t;

/// Hash-consed store of pattern templates (Id / Pure / Compose), so candidate
/// sets can hold small ids and cross products share structure.
class PatternBank {
 public:
  PatternBank();

  PatternId hole() const { return 0; }
  PatternId pure(RuleId rule);
  PatternId compose(RuleId rule, std::vector<PatternId> children);
  PatternId intern(const Template& t);

  Template materialize(PatternId id) const;
  /// Nodes other than holes.
  std::size_t solid_size(PatternId id) const { return nodes_.at(id).solid; }
  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    TemplateKind kind;
    std::uint32_t symbol;
    std::vector<PatternId> children;
    std::size_t solid;
  };
  using Key = std::tuple<TemplateKind, std::uint32_t, std::vector<PatternId>>;

  PatternId add(Node node);

  std::vector<Node> nodes_;
  std::map<Key, PatternId> index_;
};

/// Non-hole node count of a template.
std::size_t solid_size(const Template& t);

/// Matches a pattern against a template at the root; holes bind whole subterms
/// (pre-order). A hole inside `t` only matches a pattern hole.
bool match_template(const Template& pattern, const Template& t, std::vector<const Template*>& bindings);

/// Every way `pattern` matches class `cls` through Pure/Compose nodes. Each
/// match lists the class bound to each hole, pre-order. Site tags are ignored.
std::vector<std::vector<EClassId>> match_pattern(const DerivationGraph& graph, const Template& pattern, EClassId cls);

}  // namespace chordlearn
