#include "chordlearn/egraph/dump.hpp"

#include <sstream>

namespace chordlearn::eg {

namespace {

std::string node_label(const EGraph& egraph, const ENode& node) {
  auto label = egraph.symbols().name(node.op);
  if (node.site != 0) label += "@" + std::to_string(node.site);
  return label;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

nlohmann::json to_json(const EGraph& egraph) {
  auto classes = nlohmann::json::array();
  for (auto id : egraph.class_ids()) {
    const auto& cls = egraph.eclass(id);
    auto nodes = nlohmann::json::array();
    for (const auto& node : cls.nodes) {
      auto children = nlohmann::json::array();
      for (auto child : node.children) children.push_back(egraph.find(child).value);
      nodes.push_back({{"op", egraph.symbols().name(node.op)}, {"site", node.site}, {"children", children}});
    }
    nlohmann::json slots = nlohmann::json::object();
    for (std::size_t i = 0; i < egraph.num_slots(); ++i) {
      const auto& store = egraph.slot_store(i);
      if (store.has(id.value)) slots[store.name()] = store.to_json(id.value);
    }
    classes.push_back({{"id", id.value}, {"nodes", nodes}, {"slots", slots}});
  }
  return {{"num_classes", egraph.num_classes()}, {"num_nodes", egraph.num_nodes()}, {"classes", classes}};
}

std::string to_dot(const EGraph& egraph) {
  std::ostringstream out;
  out << "digraph egraph {\n  compound=true;\n  node [shape=box];\n";
  for (auto id : egraph.class_ids()) {
    const auto& cls = egraph.eclass(id);
    out << "  subgraph cluster_" << id.value << " {\n    label=\"c" << id.value << "\";\n";
    for (std::size_t n = 0; n < cls.nodes.size(); ++n) {
      out << "    n" << id.value << "_" << n << " [label=\"" << escape(node_label(egraph, cls.nodes[n])) << "\"];\n";
    }
    out << "  }\n";
  }
  for (auto id : egraph.class_ids()) {
    const auto& cls = egraph.eclass(id);
    for (std::size_t n = 0; n < cls.nodes.size(); ++n) {
      for (auto child : cls.nodes[n].children) {
        auto target = egraph.find(child).value;
        out << "  n" << id.value << "_" << n << " -> n" << target << "_0 [lhead=cluster_" << target << "];\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace chordlearn::eg
