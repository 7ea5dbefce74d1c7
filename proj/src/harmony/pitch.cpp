#include "chordlearn/harmony/pitch.hpp"

#include <array>

namespace chordlearn::harmony {

namespace {

constexpr std::array<int, 7> kNaturalSemitone{0, 2, 4, 5, 7, 9, 11};
constexpr std::array<char, 7> kLetterName{'C', 'D', 'E', 'F', 'G', 'A', 'B'};

int mod(int value, int modulus) { return ((value % modulus) + modulus) % modulus; }

std::optional<Letter> letter_from(char c) {
  switch (c) {
    case 'C': return Letter::C;
    case 'D': return Letter::D;
    case 'E': return Letter::E;
    case 'F': return Letter::F;
    case 'G': return Letter::G;
    case 'A': return Letter::A;
    case 'B': return Letter::B;
    default: return std::nullopt;
  }
}

}  // namespace

std::optional<SpelledPitchClass> SpelledPitchClass::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  auto letter = letter_from(text[0]);
  if (!letter) return std::nullopt;
  SpelledPitchClass out{*letter, 0};
  for (char c : text.substr(1)) {
    if (c == 'b') {
      --out.accidental;
    } else if (c == '#') {
      ++out.accidental;
    } else {
      return std::nullopt;
    }
  }
  if (!is_valid(out) || (text.find('b', 1) != std::string_view::npos && text.find('#') != std::string_view::npos)) {
    return std::nullopt;
  }
  return out;
}

std::string SpelledPitchClass::to_string() const {
  std::string out(1, kLetterName[static_cast<int>(letter)]);
  out.append(static_cast<std::size_t>(accidental > 0 ? accidental : -accidental), accidental > 0 ? '#' : 'b');
  return out;
}

int SpelledPitchClass::semitone() const { return mod(kNaturalSemitone[static_cast<int>(letter)] + accidental, 12); }

std::optional<SpelledInterval> SpelledInterval::parse(std::string_view text) {
  if (text.size() < 2) return std::nullopt;
  char digit = text.back();
  if (digit < '1' || digit > '7') return std::nullopt;
  SpelledInterval out{digit - '1', 0};
  auto quality = text.substr(0, text.size() - 1);
  bool perfect = out.is_perfect_class();
  if (quality == "P" && perfect) return out;
  if (quality == "M" && !perfect) return out;
  if (quality == "m" && !perfect) return SpelledInterval{out.steps, -1};
  if (quality.find_first_not_of('d') == std::string_view::npos) {
    out.deviation = -static_cast<int>(quality.size()) - (perfect ? 0 : 1);
    return out;
  }
  if (quality.find_first_not_of('A') == std::string_view::npos) {
    out.deviation = static_cast<int>(quality.size());
    return out;
  }
  return std::nullopt;
}

std::string SpelledInterval::to_string() const {
  std::string quality;
  if (deviation == 0) {
    quality = is_perfect_class() ? "P" : "M";
  } else if (deviation > 0) {
    quality.assign(static_cast<std::size_t>(deviation), 'A');
  } else if (!is_perfect_class() && deviation == -1) {
    quality = "m";
  } else {
    quality.assign(static_cast<std::size_t>(is_perfect_class() ? -deviation : -deviation - 1), 'd');
  }
  return quality + std::to_string(steps + 1);
}

int SpelledInterval::semitones() const { return mod(kNaturalSemitone[steps] + deviation, 12); }

SpelledInterval interval_down(SpelledPitchClass from, SpelledPitchClass to) {
  int steps = mod(static_cast<int>(from.letter) - static_cast<int>(to.letter), 7);
  int semis = mod(from.semitone() - to.semitone(), 12);
  int deviation = mod(semis - kNaturalSemitone[steps] + 6, 12) - 6;
  return {steps, deviation};
}

SpelledPitchClass transpose_up(SpelledPitchClass pitch, SpelledInterval interval) {
  int letter = static_cast<int>(pitch.letter) + interval.steps;
  int target = pitch.semitone() + interval.semitones();
  auto out_letter = static_cast<Letter>(mod(letter, 7));
  int accidental = mod(target - kNaturalSemitone[static_cast<int>(out_letter)] + 6, 12) - 6;
  return {out_letter, accidental};
}

}  // namespace chordlearn::harmony
