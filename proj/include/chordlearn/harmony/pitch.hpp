#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace chordlearn::harmony {

enum class Letter : std::uint8_t { C, D, E, F, G, A, B };

/// A pitch class spelled as letter plus accidental (flats negative, at most two).
struct SpelledPitchClass {
  Letter letter = Letter::C;
  int accidental = 0;

  static std::optional<SpelledPitchClass> parse(std::string_view text);
  std::string to_string() const;
  /// 0..11 with C = 0.
  int semitone() const;

  friend auto operator<=>(const SpelledPitchClass&, const SpelledPitchClass&) = default;
};

/// A spelled interval: `steps` letter steps (0 = unison .. 6 = seventh) and the
/// signed deviation in semitones from the perfect (1, 4, 5) or major (2, 3, 6, 7)
/// reference size. So m3 is {2, -1}, d5 is {4, -1}, P5 is {4, 0}.
struct SpelledInterval {
  int steps = 0;
  int deviation = 0;

  /// Parses names like "P5", "m3", "d5", "AA4".
  static std::optional<SpelledInterval> parse(std::string_view text);
  std::string to_string() const;
  bool is_perfect_class() const { return steps == 0 || steps == 3 || steps == 4; }
  /// Size in semitones, reduced to 0..11.
  int semitones() const;

  friend auto operator<=>(const SpelledInterval&, const SpelledInterval&) = default;
};

/// The descending interval from `from` down to `to`, e.g. (G, C) is P5, (F, B) is d5.
SpelledInterval interval_down(SpelledPitchClass from, SpelledPitchClass to);

/// Moves `pitch` up by `interval`. The accidental may leave [-2, 2]; callers that
/// need the invariant check `is_valid`.
SpelledPitchClass transpose_up(SpelledPitchClass pitch, SpelledInterval interval);

inline bool is_valid(SpelledPitchClass pitch) { return pitch.accidental >= -2 && pitch.accidental <= 2; }

}  // namespace chordlearn::harmony
