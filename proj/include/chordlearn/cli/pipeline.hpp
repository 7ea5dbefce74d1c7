#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chordlearn/antiunify/antiunify.hpp"
#include "chordlearn/liblearn/select.hpp"

namespace chordlearn {

enum class Mode { Joint, Piecewise };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

struct LearnOptions {
  std::size_t beam = 5;
  std::size_t max_lib = 15;
  bool reduce = true;
  PruneKey prune_key = PruneKey::Objective;
  Sharing sharing = Sharing::Dag;
};

struct RunConfig {
  std::filesystem::path corpus_path;
  std::filesystem::path grammar_path;
  Mode mode = Mode::Joint;
  LearnOptions learn;
};

struct PieceResult {
  std::string title;
  std::vector<harmony::ChordLabel> chords;
  bool parsed = false;
  BigCount derivations = 0;
  std::vector<std::string> heads;
  std::uint64_t baseline = 0;
  std::uint64_t refactored = 0;
  Template program;
  /// Program with every application expanded; a primitive derivation.
  Template expanded;
  /// The expansion is a derivation of the piece and its leaves read back the chords.
  bool round_trip = false;
};

struct LibraryEntry {
  std::string name;
  FnId candidate = 0;
  Template body;
  /// The body as stored: written with smaller library members where shorter.
  Template stored;
  std::size_t arity = 0;
  std::size_t def_size = 0;
  std::size_t charged = 0;
};

/// One learning run over a set of pieces (the whole corpus, or one piece).
struct LearnResult {
  std::vector<PieceResult> pieces;
  std::vector<LibraryEntry> library;
  std::vector<Abstraction> abstractions;
  std::size_t storage = 0;
  std::size_t candidates = 0;
  nlohmann::json candidate_dump = nlohmann::json::array();
  std::size_t egraph_nodes = 0;
  std::size_t saturated_nodes = 0;
  AuStats au;
  RewriteReport rewrites;
  Naming naming;

  std::uint64_t baseline_total() const;
  std::uint64_t refactored_total() const;
  std::uint64_t objective() const { return storage + refactored_total(); }
  bool all_parsed() const;
};

/// Parse, filter, anti-unify, rewrite, cost sets, select, extract. Pieces without a
/// complete parse are reported but left out of learning.
LearnResult learn(const std::vector<Piece>& pieces, const harmony::Grammar& grammar, const LearnOptions& options);

/// A nonnegative fraction in lowest terms; enough for storage shares.
/// (boost::rational<int64_t> from Boost 1.74 does not terminate under C++20 with GCC 13.)
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1);
  std::int64_t numerator() const { return num; }
  std::int64_t denominator() const { return den; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

struct ReportRow {
  std::string title;
  bool parsed = false;
  std::uint64_t baseline = 0;
  std::uint64_t refactored = 0;
  Rational storage_share{0};
  double cr() const;
};

struct CompressionReport {
  Mode mode = Mode::Joint;
  std::vector<ReportRow> rows;
  std::uint64_t baseline = 0;
  std::uint64_t refactored = 0;
  std::uint64_t storage = 0;
  double cr() const;
  /// One learning run in joint mode, one per piece in piecewise mode.
  std::vector<LearnResult> runs;
  bool all_parsed() const;
};

CompressionReport run(const RunConfig& config);
CompressionReport run(const std::vector<Piece>& pieces, const harmony::Grammar& grammar, Mode mode,
                      const LearnOptions& options);

/// Table-1 layout: size without library, with library, storage share, CR.
std::string render_report(const CompressionReport& report);
nlohmann::json report_to_json(const CompressionReport& report);

/// Side-by-side comparison of a joint and a piecewise report with the reference
/// table (data/reference/table1.json layout).
std::string render_reference_diff(const CompressionReport& joint, const CompressionReport& piecewise,
                                  const nlohmann::json& reference);

nlohmann::json library_to_json(const LearnResult& result);
nlohmann::json programs_to_json(const LearnResult& result);

/// A node of a refactored program as drawn: an application block (with the chords
/// its body consumes directly), a primitive rule, or a surface chord.
struct Block {
  enum class Kind { Application, Rule, Chord } kind = Kind::Rule;
  std::string label;
  std::vector<std::size_t> positions;  // chords consumed directly (Application, Chord)
  std::vector<Block> children;
};

Block program_blocks(const Template& program, const std::vector<harmony::ChordLabel>& chords,
                     const std::vector<Abstraction>& abstractions, const Naming& naming);

std::string program_to_dot(const PieceResult& piece, const LearnResult& result);
std::string library_to_dot(const LearnResult& result);

}  // namespace chordlearn
