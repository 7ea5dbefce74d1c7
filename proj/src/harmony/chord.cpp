#include "chordlearn/harmony/chord.hpp"

#include <array>
#include <optional>
#include <utility>

namespace chordlearn::harmony {

namespace {

// Longest tokens first so "m7" wins over "7".
const std::array<std::pair<std::string_view, ChordQuality (*)()>, 6> kQualityTokens{{
    {"sus", &ChordQuality::sus},
    {"M7", &ChordQuality::major_seventh},
    {"m7", &ChordQuality::minor_seventh},
    {"%7", &ChordQuality::half_diminished_seventh},
    {"o7", &ChordQuality::diminished_seventh},
    {"7", &ChordQuality::dominant_seventh},
}};

}  // namespace

std::optional<ChordQuality> ChordQuality::from_symbol(std::string_view symbol) {
  for (const auto& [token, make] : kQualityTokens)
    if (symbol == token) return make();
  return std::nullopt;
}

std::string ChordQuality::symbol() const {
  if (kind == Kind::Sus) return "sus";
  if (kind == Kind::Other) return token;
  for (const auto& [token, make] : kQualityTokens)
    if (make() == *this) return std::string(token);
  std::string out = "[";
  for (std::size_t i = 0; i < thirds.size(); ++i) out += (i ? "," : "") + std::string(thirds[i] == Third::Maj ? "M3" : "m3");
  return out + "]";
}

ChordLabel parse_chord_symbol(std::string_view text) {
  if (text.empty()) throw ChordParseError("empty chord symbol", "");

  std::size_t pos = 1;
  while (pos < text.size() && (text[pos] == 'b' || text[pos] == '#')) ++pos;
  auto root = SpelledPitchClass::parse(text.substr(0, pos));
  if (!root) {
    auto token = std::string(text.substr(0, pos));
    throw ChordParseError("unknown root '" + token + "' in chord symbol '" + std::string(text) + "'", token);
  }

  auto rest = text.substr(pos);
  for (const auto& [token, make] : kQualityTokens) {
    if (rest.starts_with(token)) return ChordLabel{*root, make(), std::string(rest.substr(token.size()))};
  }
  auto token = std::string(rest.empty() ? text : rest);
  throw ChordParseError("unknown quality '" + token + "' in chord symbol '" + std::string(text) + "'", token);
}

}  // namespace chordlearn::harmony
