#include "chordlearn/cli/pipeline.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace chordlearn {

std::string to_string(Mode mode) { return mode == Mode::Joint ? "joint" : "piecewise"; }

Mode parse_mode(const std::string& text) {
  if (text == "joint") return Mode::Joint;
  if (text == "piecewise") return Mode::Piecewise;
  throw std::invalid_argument("unknown mode '" + text + "' (expected joint or piecewise)");
}

std::uint64_t LearnResult::baseline_total() const {
  std::uint64_t total = 0;
  for (const auto& p : pieces)
    if (p.parsed) total += p.baseline;
  return total;
}

std::uint64_t LearnResult::refactored_total() const {
  std::uint64_t total = 0;
  for (const auto& p : pieces)
    if (p.parsed) total += p.refactored;
  return total;
}

bool LearnResult::all_parsed() const {
  return std::all_of(pieces.begin(), pieces.end(), [](const PieceResult& p) { return p.parsed; });
}

namespace {

void collect_fns(const Template& t, std::set<FnId>& out) {
  if (t.kind == TemplateKind::App) out.insert(t.symbol);
  for (const auto& c : t.children) collect_fns(c, out);
}

}  // namespace

LearnResult learn(const std::vector<Piece>& pieces, const harmony::Grammar& grammar, const LearnOptions& options) {
  LearnResult out;

  // Parse everything once to find the pieces that can take part.
  std::vector<Piece> parsed;
  {
    DerivationGraph probe(grammar);
    for (const auto& p : pieces) probe.add_piece(p);
    cyk_saturate(probe);
    for (PieceIndex i = 0; i < pieces.size(); ++i) {
      PieceResult row;
      row.title = pieces[i].title;
      row.chords = pieces[i].chords;
      row.baseline = 2 * pieces[i].chords.size() - 1;
      for (const auto& key : probe.full_spans(i)) row.heads.push_back(probe.label(key.head).to_string());
      row.parsed = !row.heads.empty();
      row.derivations = piece_derivation_count(probe, i);
      if (row.parsed) parsed.push_back(pieces[i]);
      out.pieces.push_back(std::move(row));
    }
  }

  DerivationGraph graph(grammar);
  out.naming = rule_naming(grammar);
  for (const auto& p : parsed) graph.add_piece(p);
  cyk_saturate(graph);
  filter_root_connected(graph);
  out.egraph_nodes = graph.egraph().num_nodes();

  auto cooccur = compute_cooccur(graph);
  auto patterns = run_au_fixpoint(graph, cooccur, {}, &out.au);
  out.candidates = patterns.size();
  out.candidate_dump = candidates_to_json(graph, patterns);
  out.abstractions = make_abstractions(patterns);
  out.rewrites = saturate_with_patterns(graph, generate_rewrites(out.abstractions));
  out.saturated_nodes = graph.egraph().num_nodes();

  StorageModel storage(out.abstractions, options.sharing);
  StorageFn storage_of = [&](const std::vector<FnId>& lib) { return std::uint64_t{storage.storage(lib)}; };
  CostSetAnalysis analysis(graph, {options.max_lib, options.beam, options.reduce, options.prune_key, storage_of});
  auto selection = parsed.empty() ? Selection{}
                                  : select_library(graph, storage, analysis,
                                                   {options.max_lib, options.beam, options.reduce, options.prune_key});
  out.storage = selection.storage;

  // Library entries are named by body size, then body.
  std::vector<FnId> order = selection.library;
  std::sort(order.begin(), order.end(), [&](FnId a, FnId b) {
    const auto& x = out.abstractions[a];
    const auto& y = out.abstractions[b];
    if (x.def_size != y.def_size) return x.def_size < y.def_size;
    return x.body < y.body;
  });
  auto names = std::make_shared<std::map<FnId, std::string>>();
  for (std::size_t i = 0; i < order.size(); ++i) (*names)[order[i]] = "f" + std::to_string(i);
  out.naming.fn = [names](FnId fn) {
    auto it = names->find(fn);
    return it == names->end() ? "c" + std::to_string(fn) : it->second;
  };
  for (auto fn : order) {
    const auto& a = out.abstractions[fn];
    auto stored = storage.body_program(fn, selection.library);
    out.library.push_back({(*names)[fn], fn, a.body, stored, a.arity, a.def_size, stored.size()});
  }

  PieceIndex g = 0;
  for (auto& row : out.pieces) {
    if (!row.parsed) continue;
    const auto& program = selection.programs.at(g);
    row.program = program.program;
    row.refactored = program.cost;
    row.expanded = expand_program(program.program, out.abstractions);
    bool valid = derive(row.expanded, row.chords, grammar).has_value();
    bool reads_back = false;
    for (auto cls : graph.full_span_classes(g)) {
      auto reading = surface_reading(graph, cls, row.expanded);
      if (reading && *reading == row.chords) reads_back = true;
    }
    row.round_trip = valid && reads_back && row.expanded.size() == row.baseline;
    ++g;
  }
  return out;
}

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  auto g = std::gcd(n, d);
  if (g != 0) num /= g, den /= g;
  if (den < 0) num = -num, den = -den;
}

double ReportRow::cr() const {
  // baseline / (refactored + num/den) = baseline * den / (refactored * den + num)
  auto den = static_cast<double>(refactored) * static_cast<double>(storage_share.den) +
             static_cast<double>(storage_share.num);
  if (den == 0) return 0.0;
  return static_cast<double>(baseline) * static_cast<double>(storage_share.den) / den;
}

double CompressionReport::cr() const {
  auto denominator = refactored + storage;
  return denominator == 0 ? 0.0 : static_cast<double>(baseline) / static_cast<double>(denominator);
}

bool CompressionReport::all_parsed() const {
  return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.parsed; });
}

CompressionReport run(const std::vector<Piece>& pieces, const harmony::Grammar& grammar, Mode mode,
                      const LearnOptions& options) {
  CompressionReport report;
  report.mode = mode;
  if (mode == Mode::Joint) {
    report.runs.push_back(learn(pieces, grammar, options));
  } else {
    for (const auto& p : pieces) report.runs.push_back(learn({p}, grammar, options));
  }

  std::int64_t parsed_count = 0;
  for (const auto& r : report.runs)
    for (const auto& p : r.pieces) parsed_count += p.parsed ? 1 : 0;

  for (const auto& r : report.runs) {
    for (const auto& p : r.pieces) {
      ReportRow row{p.title, p.parsed, p.baseline, p.refactored, Rational(0)};
      if (p.parsed) {
        row.storage_share = mode == Mode::Joint ? Rational(static_cast<std::int64_t>(r.storage), parsed_count)
                                                : Rational(static_cast<std::int64_t>(r.storage));
        report.baseline += p.baseline;
        report.refactored += p.refactored;
      }
      report.rows.push_back(std::move(row));
    }
    report.storage += r.storage;
  }
  return report;
}

CompressionReport run(const RunConfig& config) {
  auto grammar = harmony::load_grammar(config.grammar_path);
  auto pieces = load_corpus(config.corpus_path);
  return run(pieces, grammar, config.mode, config.learn);
}

nlohmann::json library_to_json(const LearnResult& result) {
  auto out = nlohmann::json::array();
  for (const auto& e : result.library) {
    std::set<FnId> uses;
    collect_fns(e.stored, uses);
    auto refs = nlohmann::json::array();
    for (auto fn : uses) refs.push_back(result.naming.fn(fn));
    out.push_back({{"name", e.name},
                   {"arity", e.arity},
                   {"def_size", e.def_size},
                   {"charged", e.charged},
                   {"body", to_sexpr(e.stored, result.naming)},
                   {"expansion", to_sexpr(e.body, result.naming)},
                   {"uses", refs}});
  }
  return out;
}

nlohmann::json programs_to_json(const LearnResult& result) {
  auto out = nlohmann::json::array();
  for (const auto& p : result.pieces) {
    nlohmann::json entry{{"title", p.title}, {"parsed", p.parsed}};
    if (p.parsed) {
      entry["program"] = to_sexpr(p.program, result.naming);
      entry["size"] = p.refactored;
      entry["expanded"] = to_sexpr(p.expanded, result.naming);
      entry["round_trip"] = p.round_trip;
    }
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace chordlearn
