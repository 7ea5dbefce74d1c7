#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "chordlearn/harmony/chord.hpp"

namespace chordlearn {

struct Piece {
  std::string title;
  std::vector<harmony::ChordLabel> chords;
};

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text form, one piece per line:  `Title: Cm7 Bbm7 Dbsus ...`  (`#` starts a comment).
std::vector<Piece> parse_corpus_text(const std::string& text, const std::string& source = "<string>");
/// JSON form: `[{"title": ..., "chords": ["Cm7", ...] or "Cm7 Bbm7 ..."}]`, optionally wrapped as `{"pieces": [...]}`.
std::vector<Piece> parse_corpus_json(const std::string& text, const std::string& source = "<string>");
/// Chooses the format by extension (.json) or by a leading `[` / `{`.
std::vector<Piece> load_corpus(const std::filesystem::path& path);

std::string render_chords(const Piece& piece);

}  // namespace chordlearn
