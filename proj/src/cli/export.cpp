#include <set>
#include <sstream>

#include "chordlearn/cli/pipeline.hpp"

namespace chordlearn {

namespace {

Block walk(const Template& t, std::size_t& pos, const std::vector<harmony::ChordLabel>& chords,
           const std::vector<Abstraction>& abstractions, const Naming& naming);

// Body of an application: its own leaves are consumed by the block, holes descend
// into the routed arguments.
void walk_body(const Template& body, std::size_t& hole, const Template& app, Block& block, std::size_t& pos,
               const std::vector<harmony::ChordLabel>& chords, const std::vector<Abstraction>& abstractions,
               const Naming& naming) {
  switch (body.kind) {
    case TemplateKind::Pure:
      block.positions.push_back(pos++);
      return;
    case TemplateKind::Id:
      block.children.push_back(walk(app.children.at(app.routing.at(hole++)), pos, chords, abstractions, naming));
      return;
    default:
      for (const auto& c : body.children) walk_body(c, hole, app, block, pos, chords, abstractions, naming);
  }
}

Block walk(const Template& t, std::size_t& pos, const std::vector<harmony::ChordLabel>& chords,
           const std::vector<Abstraction>& abstractions, const Naming& naming) {
  Block block;
  switch (t.kind) {
    case TemplateKind::Pure:
      block.kind = Block::Kind::Chord;
      block.label = pos < chords.size() ? chords[pos].to_string() : "?";
      block.positions.push_back(pos++);
      break;
    case TemplateKind::Compose:
      block.kind = Block::Kind::Rule;
      block.label = naming.rule(t.symbol);
      for (const auto& c : t.children) block.children.push_back(walk(c, pos, chords, abstractions, naming));
      break;
    case TemplateKind::App: {
      block.kind = Block::Kind::Application;
      block.label = naming.fn(t.symbol);
      std::size_t hole = 0;
      walk_body(abstractions.at(t.symbol).body, hole, t, block, pos, chords, abstractions, naming);
      break;
    }
    case TemplateKind::Id:
      block.label = "?";
      break;
  }
  return block;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

void emit(const Block& block, const std::vector<harmony::ChordLabel>& chords, std::ostringstream& out, int& counter,
          const std::string& parent) {
  auto id = "n" + std::to_string(counter++);
  if (block.kind == Block::Kind::Chord) {
    out << "  " << id << " [shape=plaintext, label=\"" << escape(block.label) << "\"];\n";
  } else if (block.kind == Block::Kind::Rule) {
    out << "  " << id << " [shape=ellipse, label=\"" << escape(block.label) << "\"];\n";
  } else {
    std::string chords_text;
    for (auto p : block.positions) chords_text += (chords_text.empty() ? "" : " ") + chords.at(p).to_string();
    out << "  " << id << " [shape=box, style=filled, fillcolor=\"#e8eef8\", label=\"" << escape(block.label)
        << "\\n" << escape(chords_text) << "\"];\n";
  }
  if (!parent.empty()) out << "  " << parent << " -> " << id << ";\n";
  for (const auto& c : block.children) emit(c, chords, out, counter, id);
}

}  // namespace

Block program_blocks(const Template& program, const std::vector<harmony::ChordLabel>& chords,
                     const std::vector<Abstraction>& abstractions, const Naming& naming) {
  std::size_t pos = 0;
  return walk(program, pos, chords, abstractions, naming);
}

std::string program_to_dot(const PieceResult& piece, const LearnResult& result) {
  std::ostringstream out;
  out << "digraph \"" << escape(piece.title) << "\" {\n  node [fontname=\"Helvetica\"];\n";
  if (piece.parsed) {
    int counter = 0;
    emit(program_blocks(piece.program, piece.chords, result.abstractions, result.naming), piece.chords, out, counter,
         "");
  }
  out << "}\n";
  return out.str();
}

std::string library_to_dot(const LearnResult& result) {
  std::ostringstream out;
  out << "digraph library {\n  node [fontname=\"Helvetica\", shape=box];\n";
  for (const auto& e : result.library) {
    out << "  " << e.name << " [label=\"" << e.name << " (arity " << e.arity << ", charged " << e.charged << ")\\n"
        << escape(to_sexpr(e.stored, result.naming)) << "\"];\n";
  }
  for (const auto& e : result.library) {
    std::set<std::string> used;
    std::vector<const Template*> stack{&e.stored};
    while (!stack.empty()) {
      const auto* t = stack.back();
      stack.pop_back();
      if (t->kind == TemplateKind::App) used.insert(result.naming.fn(t->symbol));
      for (const auto& c : t->children) stack.push_back(&c);
    }
    for (const auto& name : used) out << "  " << e.name << " -> " << name << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace chordlearn
