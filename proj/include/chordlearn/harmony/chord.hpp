#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chordlearn/harmony/pitch.hpp"

namespace chordlearn::harmony {

enum class Third : std::uint8_t { Min, Maj };

/// Essential chord quality: a stack of thirds above the root, a suspended chord,
/// or an opaque token.
struct ChordQuality {
  enum class Kind : std::uint8_t { StackOfThirds, Sus, Other };

  Kind kind = Kind::StackOfThirds;
  std::vector<Third> thirds;
  std::string token;

  static ChordQuality stack(std::vector<Third> thirds) { return {Kind::StackOfThirds, std::move(thirds), {}}; }
  static ChordQuality sus() { return {Kind::Sus, {}, {}}; }
  static ChordQuality other(std::string token) { return {Kind::Other, {}, std::move(token)}; }

  static ChordQuality dominant_seventh() { return stack({Third::Maj, Third::Min, Third::Min}); }
  static ChordQuality major_seventh() { return stack({Third::Maj, Third::Min, Third::Maj}); }
  static ChordQuality minor_seventh() { return stack({Third::Min, Third::Maj, Third::Min}); }
  static ChordQuality half_diminished_seventh() { return stack({Third::Min, Third::Min, Third::Maj}); }
  static ChordQuality diminished_seventh() { return stack({Third::Min, Third::Min, Third::Min}); }

  /// Parses a surface quality token: "7", "M7", "m7", "%7", "o7" or "sus".
  static std::optional<ChordQuality> from_symbol(std::string_view symbol);
  /// The surface token for the supported qualities, otherwise a bracketed third list.
  std::string symbol() const;

  friend auto operator<=>(const ChordQuality&, const ChordQuality&) = default;
};

/// A chord as terminal or nonterminal symbol. `ext` is carried but never interpreted.
struct ChordLabel {
  SpelledPitchClass root;
  ChordQuality quality;
  std::string ext;

  std::string to_string() const { return root.to_string() + quality.symbol() + ext; }

  friend auto operator<=>(const ChordLabel&, const ChordLabel&) = default;
};

class ChordParseError : public std::runtime_error {
 public:
  ChordParseError(const std::string& message, std::string token)
      : std::runtime_error(message), token_(std::move(token)) {}
  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

/// `<letter><accidental?><quality><ext?>`, quality in {M7, m7, 7, %7, o7, sus}.
/// Throws ChordParseError naming the offending token.
ChordLabel parse_chord_symbol(std::string_view text);

}  // namespace chordlearn::harmony
