#include "chordlearn/parser/corpus.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace chordlearn {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

harmony::ChordLabel chord_at(const std::string& symbol, const std::string& where) {
  try {
    return harmony::parse_chord_symbol(symbol);
  } catch (const harmony::ChordParseError& e) {
    throw CorpusError(where + ": " + e.what());
  }
}

std::vector<harmony::ChordLabel> chords_from_words(const std::string& text, const std::string& where) {
  std::vector<harmony::ChordLabel> out;
  std::istringstream words(text);
  for (std::string w; words >> w;) out.push_back(chord_at(w, where));
  return out;
}

void check_piece(const Piece& piece, const std::vector<Piece>& seen, const std::string& where) {
  if (piece.title.empty()) throw CorpusError(where + ": empty title");
  if (piece.chords.empty()) throw CorpusError(where + ": piece '" + piece.title + "' has no chords");
  for (const auto& p : seen)
    if (p.title == piece.title) throw CorpusError(where + ": duplicate title '" + piece.title + "'");
}

}  // namespace

std::vector<Piece> parse_corpus_text(const std::string& text, const std::string& source) {
  std::vector<Piece> pieces;
  std::istringstream in(text);
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    // '#' opens a comment at the start of a word; inside a word it is a sharp.
    for (std::size_t i = 0; i < line.size(); ++i)
      if (line[i] == '#' && (i == 0 || std::isspace(static_cast<unsigned char>(line[i - 1])))) {
        line.erase(i);
        break;
      }
    if (trim(line).empty()) continue;
    auto where = source + ":" + std::to_string(line_no);
    auto colon = line.find(':');
    if (colon == std::string::npos) throw CorpusError(where + ": expected 'Title: chords...'");
    Piece piece{trim(std::string_view(line).substr(0, colon)), {}};
    piece.chords = chords_from_words(line.substr(colon + 1), where);
    check_piece(piece, pieces, where);
    pieces.push_back(std::move(piece));
  }
  return pieces;
}

std::vector<Piece> parse_corpus_json(const std::string& text, const std::string& source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw CorpusError(source + ": " + e.what());
  }
  if (doc.is_object() && doc.contains("pieces")) doc = doc["pieces"];
  if (!doc.is_array()) throw CorpusError(source + ": expected a list of pieces");

  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& entry = doc[i];
    auto where = source + ": piece " + std::to_string(i);
    if (!entry.is_object() || !entry.contains("title") || !entry.contains("chords"))
      throw CorpusError(where + ": needs 'title' and 'chords'");
    if (!entry["title"].is_string()) throw CorpusError(where + ": 'title' must be a string");
    Piece piece{entry["title"].get<std::string>(), {}};
    const auto& chords = entry["chords"];
    if (chords.is_string()) {
      piece.chords = chords_from_words(chords.get<std::string>(), where);
    } else if (chords.is_array()) {
      for (const auto& c : chords) {
        if (!c.is_string()) throw CorpusError(where + ": chord symbols must be strings");
        piece.chords.push_back(chord_at(c.get<std::string>(), where));
      }
    } else {
      throw CorpusError(where + ": 'chords' must be a string or a list");
    }
    check_piece(piece, pieces, where);
    pieces.push_back(std::move(piece));
  }
  return pieces;
}

std::vector<Piece> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot open corpus file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  auto text = buffer.str();
  auto first = text.find_first_not_of(" \t\r\n");
  bool json = path.extension() == ".json" || (first != std::string::npos && (text[first] == '[' || text[first] == '{'));
  return json ? parse_corpus_json(text, path.string()) : parse_corpus_text(text, path.string());
}

std::string render_chords(const Piece& piece) {
  std::string out;
  for (const auto& c : piece.chords) {
    if (!out.empty()) out += ' ';
    out += c.to_string();
  }
  return out;
}

}  // namespace chordlearn
