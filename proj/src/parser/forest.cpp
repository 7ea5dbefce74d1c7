#include "chordlearn/parser/forest.hpp"

#include <algorithm>
#include <sstream>

namespace chordlearn {

namespace {

nlohmann::json span_ref(const DerivationGraph& graph, const SpanKey& key) {
  return {{"title", graph.piece(key.piece).title},
          {"head", graph.label(key.head).to_string()},
          {"i", key.begin},
          {"j", key.end}};
}

std::vector<SpanKey> sorted_spans(const DerivationGraph& graph) {
  std::vector<SpanKey> keys;
  for (const auto& key : graph.spans())
    if (graph.find_der(key)) keys.push_back(key);
  std::sort(keys.begin(), keys.end(), [&](const SpanKey& a, const SpanKey& b) {
    return std::tuple(a.piece, a.begin, a.end, graph.label(a.head).to_string()) <
           std::tuple(b.piece, b.begin, b.end, graph.label(b.head).to_string());
  });
  return keys;
}

std::string dot_id(const SpanKey& key) {
  return "s" + std::to_string(key.piece) + "_" + std::to_string(key.head) + "_" + std::to_string(key.begin) + "_" +
         std::to_string(key.end);
}

}  // namespace

nlohmann::json forest_to_json(const DerivationGraph& graph) {
  DerivationCounter counter(graph);
  nlohmann::json out;
  out["pieces"] = nlohmann::json::array();
  for (PieceIndex p = 0; p < graph.pieces().size(); ++p) {
    nlohmann::json heads = nlohmann::json::array();
    for (const auto& key : graph.full_spans(p)) heads.push_back(graph.label(key.head).to_string());
    out["pieces"].push_back({{"title", graph.piece(p).title},
                             {"length", graph.piece(p).chords.size()},
                             {"chords", render_chords(graph.piece(p))},
                             {"full_span_heads", heads},
                             {"derivations", piece_derivation_count(graph, p).str()}});
  }

  out["spans"] = nlohmann::json::array();
  for (const auto& key : sorted_spans(graph)) {
    auto cls = *graph.find_der(key);
    auto entry = span_ref(graph, key);
    entry["class"] = cls.value;
    entry["root_connected"] = graph.is_root_connected(cls);
    entry["derivations"] = counter.count(cls).str();
    auto alternatives = nlohmann::json::array();
    for (const auto& node : graph.template_nodes(cls)) {
      const auto& info = graph.op_info(node.op);
      if (info.kind == OpKind::Pure) {
        alternatives.push_back({{"rule", graph.rule_name(info.index)}, {"children", nlohmann::json::array()}});
      } else if (info.kind == OpKind::Compose) {
        auto children = nlohmann::json::array();
        for (auto child : node.children) children.push_back(span_ref(graph, *graph.span_of(child)));
        alternatives.push_back({{"rule", graph.rule_name(info.index)}, {"children", children}});
      }
    }
    entry["alternatives"] = alternatives;
    out["spans"].push_back(entry);
  }
  return out;
}

std::string forest_to_dot(const DerivationGraph& graph) {
  std::ostringstream out;
  out << "digraph forest {\n  node [fontname=\"Helvetica\"];\n";
  for (const auto& key : sorted_spans(graph)) {
    auto cls = *graph.find_der(key);
    out << "  " << dot_id(key) << " [shape=box" << (graph.is_root_connected(cls) ? "" : ", style=dashed")
        << ", label=\"" << graph.label(key.head).to_string() << " " << key.begin << ":" << key.end << "\"];\n";
    int alt = 0;
    for (const auto& node : graph.template_nodes(cls)) {
      const auto& info = graph.op_info(node.op);
      if (info.kind != OpKind::Pure && info.kind != OpKind::Compose) continue;
      auto point = dot_id(key) + "_a" + std::to_string(alt++);
      out << "  " << point << " [shape=ellipse, fontsize=9, label=\"" << graph.rule_name(info.index) << "\"];\n";
      out << "  " << dot_id(key) << " -> " << point << ";\n";
      for (auto child : node.children) out << "  " << point << " -> " << dot_id(*graph.span_of(child)) << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace chordlearn
