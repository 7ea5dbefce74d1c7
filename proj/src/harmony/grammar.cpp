#include "chordlearn/harmony/grammar.hpp"

#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace chordlearn::harmony {

namespace {

const ChordLabel& pick(Side side, const ChordLabel& left, const ChordLabel& right) {
  return side == Side::Left ? left : right;
}

struct RuleContextInfo {
  const std::string& source;
  std::string rule_id;
};

[[noreturn]] void fail(const RuleContextInfo& ctx, const YAML::Node& node, const std::string& message) {
  std::ostringstream out;
  out << ctx.source << ":" << node.Mark().line + 1 << ": rule '" << ctx.rule_id << "': " << message;
  throw GrammarError(out.str());
}

std::string scalar(const RuleContextInfo& ctx, const YAML::Node& node, const std::string& what) {
  if (!node || !node.IsScalar()) fail(ctx, node, what + " must be a scalar");
  return node.as<std::string>();
}

Side parse_side(const RuleContextInfo& ctx, const YAML::Node& node, bool termination) {
  auto text = scalar(ctx, node, "side");
  if (termination) {
    if (text == "self") return Side::Left;
    fail(ctx, node, "termination rules only know the side 'self', got '" + text + "'");
  }
  if (text == "left") return Side::Left;
  if (text == "right") return Side::Right;
  fail(ctx, node, "unknown side '" + text + "' (expected left or right)");
}

ChordQuality parse_quality(const RuleContextInfo& ctx, const YAML::Node& node) {
  if (node.IsSequence()) {
    std::vector<Third> thirds;
    for (const auto& item : node) {
      auto text = scalar(ctx, item, "third");
      if (text == "Maj" || text == "M3") {
        thirds.push_back(Third::Maj);
      } else if (text == "Min" || text == "m3") {
        thirds.push_back(Third::Min);
      } else {
        fail(ctx, item, "unknown third '" + text + "'");
      }
    }
    return ChordQuality::stack(std::move(thirds));
  }
  auto text = scalar(ctx, node, "quality");
  if (auto q = ChordQuality::from_symbol(text)) return *q;
  if (text == "dominant7") return ChordQuality::dominant_seventh();
  if (text == "major7") return ChordQuality::major_seventh();
  if (text == "minor7") return ChordQuality::minor_seventh();
  if (text == "half_diminished7") return ChordQuality::half_diminished_seventh();
  if (text == "diminished7") return ChordQuality::diminished_seventh();
  fail(ctx, node, "unknown quality '" + text + "'");
}

void expect_fields(const RuleContextInfo& ctx, const YAML::Node& node, std::initializer_list<std::string_view> allowed) {
  if (!node.IsMap()) fail(ctx, node, "expected a mapping");
  for (const auto& entry : node) {
    auto key = entry.first.as<std::string>();
    bool known = false;
    for (auto a : allowed) known |= key == a;
    if (!known) fail(ctx, entry.first, "unknown field '" + key + "'");
  }
}

const YAML::Node required(const RuleContextInfo& ctx, const YAML::Node& node, const char* field) {
  auto value = node[field];
  if (!value) fail(ctx, node, std::string("missing field '") + field + "'");
  return value;
}

Constraint parse_constraint(const RuleContextInfo& ctx, const YAML::Node& node, bool termination) {
  if (node.IsScalar()) {
    auto name = node.as<std::string>();
    if (termination) fail(ctx, node, "constraint '" + name + "' relates two chords; termination rules have one");
    if (name == "roots_equal") return constraint::RootsEqual{};
    if (name == "qualities_equal") return constraint::QualitiesEqual{};
    fail(ctx, node, "unknown constraint '" + name + "'");
  }
  if (!node.IsMap() || node.size() != 1) fail(ctx, node, "a constraint is a name or a single-key mapping");
  auto name = node.begin()->first.as<std::string>();
  auto body = node.begin()->second;

  if (name == "interval_down") {
    if (termination) fail(ctx, node, "interval_down relates two chords; termination rules have one");
    expect_fields(ctx, body, {"from", "to", "interval"});
    auto text = scalar(ctx, required(ctx, body, "interval"), "interval");
    auto interval = SpelledInterval::parse(text);
    if (!interval) fail(ctx, body["interval"], "unknown interval '" + text + "'");
    return constraint::IntervalDown{parse_side(ctx, required(ctx, body, "from"), false),
                                    parse_side(ctx, required(ctx, body, "to"), false), *interval};
  }
  if (name == "quality_is" || name == "quality_is_not") {
    expect_fields(ctx, body, {"side", "quality"});
    auto side = parse_side(ctx, required(ctx, body, "side"), termination);
    auto quality = parse_quality(ctx, required(ctx, body, "quality"));
    if (name == "quality_is") return constraint::QualityIs{side, std::move(quality)};
    return constraint::QualityIsNot{side, std::move(quality)};
  }
  fail(ctx, node, "unknown constraint '" + name + "'");
}

}  // namespace

bool holds(const Constraint& c, const ChordLabel& left, const ChordLabel& right) {
  return std::visit(
      [&](const auto& k) -> bool {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, constraint::IntervalDown>) {
          return interval_down(pick(k.from, left, right).root, pick(k.to, left, right).root) == k.interval;
        } else if constexpr (std::is_same_v<K, constraint::QualityIs>) {
          // A sus chord is not a stack of thirds, so it never equals one.
          return pick(k.side, left, right).quality == k.quality;
        } else if constexpr (std::is_same_v<K, constraint::QualityIsNot>) {
          return pick(k.side, left, right).quality != k.quality;
        } else if constexpr (std::is_same_v<K, constraint::RootsEqual>) {
          return left.root == right.root;
        } else {
          return left.quality == right.quality;
        }
      },
      c);
}

bool check_rule(const GrammarRule& rule, const ChordLabel& left, const ChordLabel& right) {
  for (const auto& c : rule.constraints)
    if (!holds(c, left, right)) return false;
  return true;
}

Grammar::Grammar(std::vector<GrammarRule> rules, StartPolicy start) : rules_(std::move(rules)), start_(start) {
  for (RuleId i = 0; i < rules_.size(); ++i) {
    (rules_[i].kind == RuleKind::Binary ? binary_ : termination_).push_back(i);
  }
}

std::optional<RuleId> Grammar::find(std::string_view id) const {
  for (RuleId i = 0; i < rules_.size(); ++i)
    if (rules_[i].id == id) return i;
  return std::nullopt;
}

bool Grammar::check(RuleId rule, const ChordLabel& left, const ChordLabel& right) const {
  const auto& r = rules_.at(rule);
  return r.kind == RuleKind::Binary && check_rule(r, left, right);
}

bool Grammar::terminates(RuleId rule, const ChordLabel& chord) const {
  const auto& r = rules_.at(rule);
  return r.kind == RuleKind::Termination && check_rule(r, chord, chord);
}

Grammar parse_grammar(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw GrammarError(source + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  RuleContextInfo top{source, "<grammar>"};
  if (!root.IsMap()) fail(top, root, "the grammar file must be a mapping with a 'rules' list");
  expect_fields(top, root, {"start_policy", "rules"});

  auto start = StartPolicy::AnyHead;
  if (auto policy = root["start_policy"]) {
    if (scalar(top, policy, "start_policy") != "any_head") fail(top, policy, "unsupported start_policy");
  }

  auto list = root["rules"];
  if (!list || !list.IsSequence()) fail(top, root, "'rules' must be a list");

  std::vector<GrammarRule> rules;
  for (const auto& item : list) {
    RuleContextInfo ctx{source, "<unnamed>"};
    if (item.IsMap() && item["id"] && item["id"].IsScalar()) ctx.rule_id = item["id"].as<std::string>();
    expect_fields(ctx, item, {"id", "kind", "head", "relation", "constraints"});

    GrammarRule rule;
    rule.id = scalar(ctx, required(ctx, item, "id"), "id");
    rule.line = item.Mark().line + 1;
    for (const auto& seen : rules)
      if (seen.id == rule.id) fail(ctx, item, "duplicate rule id");

    auto kind = scalar(ctx, required(ctx, item, "kind"), "kind");
    if (kind == "binary") {
      rule.kind = RuleKind::Binary;
    } else if (kind == "termination") {
      rule.kind = RuleKind::Termination;
    } else {
      fail(ctx, item["kind"], "unknown kind '" + kind + "' (expected binary or termination)");
    }
    const bool termination = rule.kind == RuleKind::Termination;

    if (termination) {
      if (item["head"]) fail(ctx, item["head"], "termination rules have no head side");
    } else {
      rule.head = parse_side(ctx, required(ctx, item, "head"), false);
    }
    if (auto relation = item["relation"]) rule.relation = scalar(ctx, relation, "relation");
    if (auto constraints = item["constraints"]) {
      if (!constraints.IsSequence()) fail(ctx, constraints, "'constraints' must be a list");
      for (const auto& c : constraints) rule.constraints.push_back(parse_constraint(ctx, c, termination));
    }
    rules.push_back(std::move(rule));
  }
  if (rules.empty()) fail(top, list, "a grammar needs at least one rule");
  return Grammar(std::move(rules), start);
}

Grammar load_grammar(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GrammarError("cannot open grammar file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_grammar(buffer.str(), path.string());
}

}  // namespace chordlearn::harmony
