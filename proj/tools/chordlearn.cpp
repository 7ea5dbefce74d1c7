// chordlearn: parse a chord corpus, learn a shared library of harmonic
// abstractions, and report compression.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "chordlearn/cli/pipeline.hpp"
#include "chordlearn/parser/forest.hpp"

namespace fs = std::filesystem;
using namespace chordlearn;

namespace {

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string slug(const std::string& title) {
  std::string out;
  for (char c : title) {
    if (std::isalnum(static_cast<unsigned char>(c))) out.push_back(static_cast<char>(std::tolower(c)));
    else if (!out.empty() && out.back() != '_') out.push_back('_');
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out.empty() ? "piece" : out;
}

struct Common {
  std::string corpus;
  std::string grammar = CHORDLEARN_DATA_DIR "/grammar/default.yaml";
  std::string mode = "joint";
  std::size_t beam = 5;
  std::size_t max_lib = 15;
  std::string out;
  std::string dot;
};

void add_common(CLI::App* cmd, Common& c, bool learning) {
  cmd->add_option("--corpus", c.corpus, "corpus file (text or JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--grammar", c.grammar, "grammar file")->check(CLI::ExistingFile);
  cmd->add_option("--out", c.out, "output path");
  cmd->add_option("--dot", c.dot, "directory for Graphviz files");
  if (!learning) return;
  cmd->add_option("--mode", c.mode, "joint or piecewise")->check(CLI::IsMember({"joint", "piecewise"}));
  cmd->add_option("--beam", c.beam, "beam width")->check(CLI::PositiveNumber);
  cmd->add_option("--max-lib", c.max_lib, "maximum library size")->check(CLI::NonNegativeNumber);
}

LearnOptions options_of(const Common& c) {
  LearnOptions o;
  o.beam = c.beam;
  o.max_lib = c.max_lib;
  return o;
}

int cmd_parse(const Common& c) {
  auto grammar = harmony::load_grammar(c.grammar);
  auto pieces = load_corpus(c.corpus);
  DerivationGraph graph(grammar);
  for (const auto& p : pieces) graph.add_piece(p);
  cyk_saturate(graph);
  filter_root_connected(graph);
  auto forest = forest_to_json(graph);
  std::cout << forest["pieces"].dump(2) << "\n";
  if (!c.out.empty()) write_file(c.out, forest.dump(2) + "\n");
  if (!c.dot.empty()) write_file(fs::path(c.dot) / "forest.dot", forest_to_dot(graph));
  bool ok = true;
  for (PieceIndex p = 0; p < pieces.size(); ++p)
    if (graph.full_spans(p).empty()) {
      std::cerr << "error: no complete parse for '" << pieces[p].title << "'\n";
      ok = false;
    }
  return ok ? 0 : 1;
}

void write_dots(const CompressionReport& report, const fs::path& dir) {
  for (std::size_t r = 0; r < report.runs.size(); ++r) {
    const auto& run = report.runs[r];
    for (const auto& p : run.pieces) write_file(dir / (slug(p.title) + ".dot"), program_to_dot(p, run));
    auto name = report.mode == Mode::Joint ? std::string("library.dot")
                                           : "library_" + slug(run.pieces.front().title) + ".dot";
    write_file(dir / name, library_to_dot(run));
  }
}

void write_outputs(const CompressionReport& report, const fs::path& dir) {
  write_file(dir / "report.json", report_to_json(report).dump(2) + "\n");
  nlohmann::json library = nlohmann::json::array();
  nlohmann::json programs = nlohmann::json::array();
  nlohmann::json candidates = nlohmann::json::array();
  for (const auto& run : report.runs) {
    library.push_back(library_to_json(run));
    for (auto& p : programs_to_json(run)) programs.push_back(p);
    candidates.push_back(run.candidate_dump);
  }
  write_file(dir / "library.json", (report.mode == Mode::Joint ? library[0] : library).dump(2) + "\n");
  write_file(dir / "programs.json", programs.dump(2) + "\n");
  write_file(dir / "candidates.json", (report.mode == Mode::Joint ? candidates[0] : candidates).dump(2) + "\n");
}

void print_libraries(const CompressionReport& report) {
  for (const auto& run : report.runs) {
    if (report.mode == Mode::Piecewise) std::cout << "\n[" << run.pieces.front().title << "]";
    std::cout << "\nLibrary (" << run.library.size() << " abstractions, storage " << run.storage << "):\n";
    for (const auto& e : run.library)
      std::cout << "  " << e.name << " = " << to_sexpr(e.stored, run.naming) << "   ; charged " << e.charged << "\n";
    std::cout << "Refactored derivations:\n";
    for (const auto& p : run.pieces)
      if (p.parsed) std::cout << "  " << p.title << " (" << p.refactored << "): " << to_sexpr(p.program, run.naming) << "\n";
  }
}

int report_parse_failures(const CompressionReport& report) {
  int code = 0;
  for (const auto& row : report.rows)
    if (!row.parsed) {
      std::cerr << "error: no complete parse for '" << row.title << "'\n";
      code = 1;
    }
  return code;
}

int cmd_learn(const Common& c, bool print_details) {
  RunConfig config{c.corpus, c.grammar, parse_mode(c.mode), options_of(c)};
  auto report = run(config);
  std::cout << render_report(report);
  if (print_details) print_libraries(report);
  if (!c.out.empty()) write_outputs(report, c.out);
  if (!c.dot.empty()) write_dots(report, c.dot);
  return report_parse_failures(report);
}

int cmd_report(const Common& c, const std::string& reference_path) {
  auto grammar = harmony::load_grammar(c.grammar);
  auto pieces = load_corpus(c.corpus);
  auto joint = run(pieces, grammar, Mode::Joint, options_of(c));
  auto piecewise = run(pieces, grammar, Mode::Piecewise, options_of(c));
  std::cout << render_report(joint) << "\n" << render_report(piecewise) << "\n";
  if (!reference_path.empty()) {
    std::ifstream in(reference_path);
    if (!in) throw std::runtime_error("cannot read " + reference_path);
    std::cout << render_reference_diff(joint, piecewise, nlohmann::json::parse(in));
  }
  if (!c.out.empty())
    write_file(c.out, nlohmann::json{{"joint", report_to_json(joint)}, {"piecewise", report_to_json(piecewise)}}.dump(2) +
                          "\n");
  return std::max(report_parse_failures(joint), report_parse_failures(piecewise));
}

int cmd_export(const Common& c) {
  if (c.dot.empty() && c.out.empty()) throw std::runtime_error("export needs --dot and/or --out");
  RunConfig config{c.corpus, c.grammar, parse_mode(c.mode), options_of(c)};
  auto report = run(config);
  if (!c.dot.empty()) write_dots(report, c.dot);
  if (!c.out.empty()) write_outputs(report, c.out);
  return report_parse_failures(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learn harmonic derivations and a shared library of abstractions from a chord corpus"};
  app.require_subcommand(1);

  Common parse_opts, learn_opts, report_opts, export_opts;
  std::string reference = CHORDLEARN_DATA_DIR "/reference/table1.json";

  auto* parse = app.add_subcommand("parse", "parse every piece and print forest statistics");
  add_common(parse, parse_opts, false);
  auto* learn_cmd = app.add_subcommand("learn", "run the full pipeline in one mode");
  add_common(learn_cmd, learn_opts, true);
  auto* report = app.add_subcommand("report", "joint and piecewise runs side by side, with the reference diff");
  add_common(report, report_opts, true);
  report->add_option("--reference", reference, "reference table (JSON); empty to skip");
  auto* export_cmd = app.add_subcommand("export", "write JSON and Graphviz artifacts");
  add_common(export_cmd, export_opts, true);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*parse) return cmd_parse(parse_opts);
    if (*learn_cmd) return cmd_learn(learn_opts, true);
    if (*report) return cmd_report(report_opts, reference);
    if (*export_cmd) return cmd_export(export_opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
