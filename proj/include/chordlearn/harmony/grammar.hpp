#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "chordlearn/harmony/chord.hpp"

namespace chordlearn::harmony {

enum class Side : std::uint8_t { Left, Right };

namespace constraint {

struct IntervalDown {
  Side from = Side::Left;
  Side to = Side::Right;
  SpelledInterval interval;
};
struct QualityIs {
  Side side = Side::Left;
  ChordQuality quality;
};
struct QualityIsNot {
  Side side = Side::Left;
  ChordQuality quality;
};
struct RootsEqual {};
struct QualitiesEqual {};

}  // namespace constraint

using Constraint = std::variant<constraint::IntervalDown, constraint::QualityIs, constraint::QualityIsNot,
                                constraint::RootsEqual, constraint::QualitiesEqual>;

/// Evaluates `c` on an ordered chord pair. Termination rules pass the chord as both sides.
bool holds(const Constraint& c, const ChordLabel& left, const ChordLabel& right);

enum class RuleKind : std::uint8_t { Binary, Termination };

struct GrammarRule {
  std::string id;
  RuleKind kind = RuleKind::Binary;
  /// Which child the pair reduces to (binary rules only).
  Side head = Side::Right;
  std::string relation;
  std::vector<Constraint> constraints;
  int line = 0;
};

enum class StartPolicy : std::uint8_t { AnyHead };

class GrammarError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A rule index into `Grammar::rules`.
using RuleId = std::uint32_t;

class Grammar {
 public:
  Grammar() = default;
  Grammar(std::vector<GrammarRule> rules, StartPolicy start);

  const std::vector<GrammarRule>& rules() const { return rules_; }
  const GrammarRule& rule(RuleId id) const { return rules_.at(id); }
  std::optional<RuleId> find(std::string_view id) const;
  StartPolicy start_policy() const { return start_; }
  const std::vector<RuleId>& binary_rules() const { return binary_; }
  const std::vector<RuleId>& termination_rules() const { return termination_; }

  /// For binary `rule`: true iff every constraint holds on (left, right).
  bool check(RuleId rule, const ChordLabel& left, const ChordLabel& right) const;
  /// For termination `rule`: true iff the chord may terminate through it.
  bool terminates(RuleId rule, const ChordLabel& chord) const;
  /// The nonterminal a binary rule reduces (left, right) to.
  const ChordLabel& head_of(RuleId rule, const ChordLabel& left, const ChordLabel& right) const {
    return rules_.at(rule).head == Side::Left ? left : right;
  }

 private:
  std::vector<GrammarRule> rules_;
  StartPolicy start_ = StartPolicy::AnyHead;
  std::vector<RuleId> binary_;
  std::vector<RuleId> termination_;
};

/// Free-function form of `Grammar::check` on a single rule.
bool check_rule(const GrammarRule& rule, const ChordLabel& left, const ChordLabel& right);

/// Parses the YAML grammar schema (see data/grammar/README.md). Throws GrammarError
/// carrying the rule id and line on any schema violation.
Grammar parse_grammar(const std::string& text, const std::string& source = "<string>");
Grammar load_grammar(const std::filesystem::path& path);

}  // namespace chordlearn::harmony
