#pragma once

// Toy corpora for the library-selection checks: a few short random pieces with at
// most three candidate abstractions rewritten into the graph.

#include <random>

#include "chordlearn/antiunify/antiunify.hpp"
#include "chordlearn/antiunify/cooccur.hpp"
#include "chordlearn/liblearn/costset.hpp"
#include "chordlearn/liblearn/rewrite.hpp"
#include "chordlearn/liblearn/select.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace fixtures {

/// A small corpus with at most `max_candidates` abstractions rewritten into its graph.
struct Toy {
  std::vector<Piece> pieces;
  DerivationGraph graph;
  std::vector<Template> candidates;
  std::vector<Abstraction> abstractions;
  RewriteReport rewrites;

  Toy(std::vector<Piece> ps, std::size_t max_candidates, unsigned seed)
      : pieces(std::move(ps)), graph(parsed(pieces)) {
    auto all = run_au_fixpoint(graph, compute_cooccur(graph));
    std::mt19937 rng(seed);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(std::min(all.size(), max_candidates));
    std::sort(all.begin(), all.end());
    candidates = all;
    abstractions = make_abstractions(candidates);
    rewrites = saturate_with_patterns(graph, generate_rewrites(abstractions));
  }

  Selection select(std::size_t beam, bool reduce, PruneKey key) {
    StorageModel storage(abstractions, Sharing::Dag);
    StorageFn fn = [&](const std::vector<FnId>& lib) { return std::uint64_t{storage.storage(lib)}; };
    CostSetAnalysis analysis(graph, {15, beam, reduce, key, fn});
    return select_library(graph, storage, analysis, {15, beam, reduce, key});
  }

  std::vector<std::vector<Template>> piece_trees() const {
    std::vector<std::vector<Template>> out;
    for (const auto& p : pieces) {
      out.emplace_back();
      for (const auto& t : oracle::complete_trees(p.chords, graph.grammar())) out.back().push_back(t.tmpl);
    }
    return out;
  }

  std::uint64_t baseline() const {
    std::uint64_t total = 0;
    for (const auto& p : pieces) total += 2 * p.chords.size() - 1;
    return total;
  }
};

inline Toy toy(unsigned seed) { return Toy(parseable_pieces(100 + seed, 2 + seed % 2, 3, 8), 3, seed); }

}  // namespace fixtures
