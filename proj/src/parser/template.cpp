#include "chordlearn/parser/template.hpp"

#include <algorithm>
#include <stdexcept>

namespace chordlearn {

std::size_t Template::size() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c.size();
  return n;
}

std::size_t Template::hole_count() const {
  if (kind == TemplateKind::Id) return 1;
  std::size_t n = 0;
  for (const auto& c : children) n += c.hole_count();
  return n;
}

std::size_t Template::leaf_count() const {
  if (kind == TemplateKind::Pure) return 1;
  std::size_t n = 0;
  for (const auto& c : children) n += c.leaf_count();
  return n;
}

bool Template::contains_app() const {
  if (kind == TemplateKind::App) return true;
  for (const auto& c : children)
    if (c.contains_app()) return true;
  return false;
}

std::strong_ordering operator<=>(const Template& a, const Template& b) {
  if (auto c = a.kind <=> b.kind; c != 0) return c;
  if (auto c = a.symbol <=> b.symbol; c != 0) return c;
  if (auto c = a.routing <=> b.routing; c != 0) return c;
  return std::lexicographical_compare_three_way(a.children.begin(), a.children.end(), b.children.begin(),
                                                b.children.end());
}

std::string render_routing(std::span<const std::uint32_t> routing) {
  std::string out = "<";
  std::uint32_t fresh = 0;
  for (std::size_t h = 0; h < routing.size(); ++h) {
    if (h) out += ' ';
    if (routing[h] == fresh) {
      out += '_';
      ++fresh;
    } else {
      out += std::to_string(routing[h]);
    }
  }
  return out + ">";
}

namespace {

bool is_identity_routing(std::span<const std::uint32_t> routing) {
  for (std::size_t h = 0; h < routing.size(); ++h)
    if (routing[h] != h) return false;
  return true;
}

void instantiate_into(const Template& body, std::span<const std::uint32_t> routing, std::span<const Template> args,
                      std::size_t& next_hole, Template& out) {
  if (body.kind == TemplateKind::Id) {
    if (next_hole >= routing.size()) throw std::invalid_argument("template has more holes than its routing");
    out = args[routing[next_hole++]];
    return;
  }
  out.kind = body.kind;
  out.symbol = body.symbol;
  out.routing = body.routing;
  out.children.resize(body.children.size());
  for (std::size_t i = 0; i < body.children.size(); ++i)
    instantiate_into(body.children[i], routing, args, next_hole, out.children[i]);
}

std::optional<harmony::ChordLabel> derive_at(const Template& t, std::span<const harmony::ChordLabel> chords,
                                             const harmony::Grammar& grammar, std::size_t& pos) {
  switch (t.kind) {
    case TemplateKind::Pure: {
      if (pos >= chords.size() || !grammar.terminates(t.symbol, chords[pos])) return std::nullopt;
      return chords[pos++];
    }
    case TemplateKind::Compose: {
      if (t.children.size() != 2) return std::nullopt;
      auto left = derive_at(t.children[0], chords, grammar, pos);
      if (!left) return std::nullopt;
      auto right = derive_at(t.children[1], chords, grammar, pos);
      if (!right || !grammar.check(t.symbol, *left, *right)) return std::nullopt;
      return grammar.head_of(t.symbol, *left, *right);
    }
    default:
      return std::nullopt;
  }
}

}  // namespace

std::string to_sexpr(const Template& t, const Naming& naming) {
  switch (t.kind) {
    case TemplateKind::Id:
      return "?";
    case TemplateKind::Pure:
      return naming.rule(t.symbol);
    case TemplateKind::Compose: {
      std::string out = "(" + naming.rule(t.symbol);
      for (const auto& c : t.children) out += " " + to_sexpr(c, naming);
      return out + ")";
    }
    case TemplateKind::App: {
      std::string out = "(" + naming.fn(t.symbol);
      if (!is_identity_routing(t.routing)) out += " " + render_routing(t.routing);
      for (const auto& c : t.children) out += " " + to_sexpr(c, naming);
      return out + ")";
    }
  }
  return {};
}

Template instantiate(const Template& body, std::span<const std::uint32_t> routing, std::span<const Template> args) {
  Template out;
  std::size_t next_hole = 0;
  instantiate_into(body, routing, args, next_hole, out);
  if (next_hole != routing.size()) throw std::invalid_argument("routing has more entries than the template has holes");
  return out;
}

Template expand(const Template& t, const std::function<const Template&(FnId)>& body_of) {
  std::vector<Template> children;
  children.reserve(t.children.size());
  for (const auto& c : t.children) children.push_back(expand(c, body_of));
  if (t.kind != TemplateKind::App) return Template{t.kind, t.symbol, t.routing, std::move(children)};
  // Bodies may themselves reference other abstractions.
  return expand(instantiate(body_of(t.symbol), t.routing, children), body_of);
}

std::optional<harmony::ChordLabel> derive(const Template& t, std::span<const harmony::ChordLabel> chords,
                                          const harmony::Grammar& grammar) {
  std::size_t pos = 0;
  auto head = derive_at(t, chords, grammar, pos);
  if (!head || pos != chords.size()) return std::nullopt;
  return head;
}

}  // namespace chordlearn
