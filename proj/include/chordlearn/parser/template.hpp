#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chordlearn/harmony/grammar.hpp"

namespace chordlearn {

using harmony::RuleId;

/// Index of a library abstraction (candidate pattern).
using FnId = std::uint32_t;

enum class TemplateKind : std::uint8_t { Id, Pure, Compose, App };

/// A derivation program. `Pure r` is a primitive rule leaf, `Compose r [..]` applies
/// binary rule r to child templates, `Id` is a hole, and `App f <routing> [args]`
/// applies library abstraction f, routing body hole h to argument `routing[h]`.
struct Template {
  TemplateKind kind = TemplateKind::Id;
  std::uint32_t symbol = 0;
  std::vector<std::uint32_t> routing;
  std::vector<Template> children;

  static Template hole() { return {}; }
  static Template pure(RuleId rule) { return {TemplateKind::Pure, rule, {}, {}}; }
  static Template compose(RuleId rule, std::vector<Template> children) {
    return {TemplateKind::Compose, rule, {}, std::move(children)};
  }
  static Template app(FnId fn, std::vector<std::uint32_t> routing, std::vector<Template> args) {
    return {TemplateKind::App, fn, std::move(routing), std::move(args)};
  }

  /// Node count; holes, leaves, Compose heads and App heads count one each.
  std::size_t size() const;
  std::size_t hole_count() const;
  /// Number of `Pure` leaves, i.e. surface chords a primitive derivation covers.
  std::size_t leaf_count() const;
  bool contains_app() const;

  friend bool operator==(const Template&, const Template&) = default;
  friend std::strong_ordering operator<=>(const Template& a, const Template& b);
};

/// Resolves rule and abstraction indices to display names.
struct Naming {
  std::function<std::string(RuleId)> rule;
  std::function<std::string(FnId)> fn;
};

/// `?` for holes, `name` for leaves, `(rule child..)` for Compose and
/// `(fn <_ _ 1> arg..)` for App (the routing part is omitted when it is the identity).
std::string to_sexpr(const Template& t, const Naming& naming);

/// Renders routing in the `<_ _ 1>` form: `_` takes the next fresh argument, a
/// number reuses an earlier argument.
std::string render_routing(std::span<const std::uint32_t> routing);

/// Builds the routing for hole bindings: equal bindings share one argument.
/// Returns (routing, indices of the distinct bindings in first-occurrence order).
template <class T>
std::pair<std::vector<std::uint32_t>, std::vector<std::size_t>> route_arguments(std::span<const T> bindings) {
  std::vector<std::uint32_t> routing;
  std::vector<std::size_t> distinct;
  for (std::size_t h = 0; h < bindings.size(); ++h) {
    std::uint32_t arg = static_cast<std::uint32_t>(distinct.size());
    for (std::size_t d = 0; d < distinct.size(); ++d) {
      if (bindings[distinct[d]] == bindings[h]) {
        arg = static_cast<std::uint32_t>(d);
        break;
      }
    }
    if (arg == distinct.size()) distinct.push_back(h);
    routing.push_back(arg);
  }
  return {routing, distinct};
}

/// Replaces the holes of `body` (pre-order, left to right) by `args[routing[h]]`.
Template instantiate(const Template& body, std::span<const std::uint32_t> routing, std::span<const Template> args);

/// Expands every App node through `body_of` until only Pure/Compose remain.
Template expand(const Template& t, const std::function<const Template&(FnId)>& body_of);

/// Evaluates a primitive derivation over `chords`, consuming one chord per leaf.
/// Returns the head nonterminal, or nullopt if a rule fails or the leaf count differs.
std::optional<harmony::ChordLabel> derive(const Template& t, std::span<const harmony::ChordLabel> chords,
                                          const harmony::Grammar& grammar);

}  // namespace chordlearn
