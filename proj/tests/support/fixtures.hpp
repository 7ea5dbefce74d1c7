#pragma once

// Shared setup for the test binaries: the default grammar, chord lists, and random
// progressions.

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include "chordlearn/parser/corpus.hpp"
#include "chordlearn/parser/derivation_graph.hpp"

namespace fixtures {

using namespace chordlearn;
using harmony::ChordLabel;

inline harmony::Grammar default_grammar() { return harmony::load_grammar(CHORDLEARN_DATA_DIR "/grammar/default.yaml"); }

inline std::vector<ChordLabel> chords(const std::string& text) {
  std::vector<ChordLabel> out;
  std::istringstream in(text);
  for (std::string w; in >> w;) out.push_back(harmony::parse_chord_symbol(w));
  return out;
}

inline DerivationGraph parsed(const std::vector<Piece>& pieces, eg::RunOptions options = {}) {
  DerivationGraph graph(default_grammar());
  for (const auto& p : pieces) graph.add_piece(p);
  if (!cyk_saturate(graph, options).saturated) throw std::runtime_error("parse did not saturate");
  filter_root_connected(graph);
  return graph;
}

inline std::vector<Template> sorted(std::vector<Template> v) {
  std::sort(v.begin(), v.end());
  return v;
}

/// Random progressions: half drawn freely from a diatonic vocabulary, half built as
/// chains of descending fifths (with repeats and the odd foreign chord) so they parse.
inline std::vector<Piece> random_pieces(unsigned seed, int count, std::size_t max_len) {
  const char* vocab[] = {"Dm7", "G7", "CM7", "Am7", "FM7", "E7", "B%7", "A7", "D7", "Em7", "Bb7", "C7", "Gm7", "Fsus", "Csus"};
  const char* qualities[] = {"m7", "7", "M7", "%7", "sus"};
  auto fourth_up = *harmony::SpelledInterval::parse("P4");  // a fifth down
  std::mt19937 rng(seed);
  std::vector<Piece> out;
  for (int i = 0; i < count; ++i) {
    Piece p{"rand" + std::to_string(i), {}};
    auto len = 1 + rng() % max_len;
    if (i % 2 == 0) {
      for (std::size_t k = 0; k < len; ++k) p.chords.push_back(harmony::parse_chord_symbol(vocab[rng() % 15]));
    } else {
      auto root = *harmony::SpelledPitchClass::parse(std::string(1, "CDEFGAB"[rng() % 7]));
      std::string current = root.to_string() + qualities[rng() % 5];
      for (std::size_t k = 0; k < len; ++k) {
        p.chords.push_back(harmony::parse_chord_symbol(rng() % 9 == 0 ? std::string(vocab[rng() % 15]) : current));
        if (rng() % 3 == 0) continue;  // repeat: prolongation makes these ambiguous
        root = harmony::transpose_up(root, fourth_up);
        if (!harmony::is_valid(root)) root = *harmony::SpelledPitchClass::parse("C");
        current = root.to_string() + qualities[rng() % 5];
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}


/// Random progressions that have at least one complete parse, lengths in [min_len, max_len].
inline std::vector<Piece> parseable_pieces(unsigned seed, std::size_t count, std::size_t min_len, std::size_t max_len) {
  auto grammar = default_grammar();
  std::vector<Piece> out;
  for (unsigned round = 0; out.size() < count; ++round) {
    for (auto& p : random_pieces(seed * 7919 + round, 40, max_len)) {
      if (out.size() == count) break;
      if (p.chords.size() < min_len) continue;
      DerivationGraph g(grammar);
      g.add_piece(p);
      cyk_saturate(g);
      if (g.full_spans(0).empty()) continue;
      p.title = "p" + std::to_string(out.size());
      out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace fixtures
