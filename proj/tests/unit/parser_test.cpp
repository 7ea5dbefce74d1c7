#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "chordlearn/parser/corpus.hpp"
#include "chordlearn/parser/derivation_graph.hpp"
#include "chordlearn/parser/forest.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace chordlearn;
using namespace fixtures;
using harmony::ChordLabel;

TEST(Corpus, TextAndJsonAgree) {
  auto text = parse_corpus_text("# two pieces\nA: Dm7 G7 CM7\nB piece:  Am7  D7 # trailing\n\n");
  auto json = parse_corpus_json(R"({"pieces": [{"title": "A", "chords": ["Dm7", "G7", "CM7"]},
                                                {"title": "B piece", "chords": "Am7 D7"}]})");
  ASSERT_EQ(text.size(), 2u);
  ASSERT_EQ(json.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(text[i].title, json[i].title);
    EXPECT_EQ(text[i].chords, json[i].chords);
  }
  EXPECT_EQ(render_chords(text[0]), "Dm7 G7 CM7");
}

TEST(Corpus, SharpsAreNotComments) {
  auto pieces = parse_corpus_text("#header\nA: C#m7 F#7 BM7 #comment\n");
  ASSERT_EQ(pieces.size(), 1u);
  EXPECT_EQ(render_chords(pieces[0]), "C#m7 F#7 BM7");
}

TEST(Corpus, ErrorsCarryLocation) {
  try {
    parse_corpus_text("A: Dm7\nB: Dm7 H7\n", "c.txt");
    FAIL();
  } catch (const CorpusError& e) {
    EXPECT_NE(std::string(e.what()).find("c.txt:2"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("H"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_corpus_text("no colon here\n"), CorpusError);
  EXPECT_THROW(parse_corpus_text("A:\n"), CorpusError);
  EXPECT_THROW(parse_corpus_text("A: C7\nA: C7\n"), CorpusError);
  EXPECT_THROW(parse_corpus_json("[{\"title\": 3, \"chords\": []}]"), CorpusError);
  EXPECT_THROW(load_corpus("/nonexistent/corpus.txt"), CorpusError);
}

TEST(Parser, EncodeOneFactPerPosition) {
  DerivationGraph graph(default_grammar());
  graph.add_piece({"x", chords("C7")});
  const auto& words = graph.db().table(tables::kIsWord);
  ASSERT_EQ(words.size(), 1u);
  EXPECT_EQ(words.row(0), (eg::Row{0, graph.intern(harmony::parse_chord_symbol("C7")), 0}));
}

TEST(Parser, SingleChordHasOnlyBaseFacts) {
  auto graph = parsed({{"x", chords("C7")}});
  EXPECT_EQ(graph.db().table(tables::kIsPhrase).size(), 1u);
  EXPECT_EQ(graph.db().table(tables::kSplit).size(), 0u);
  EXPECT_EQ(piece_derivation_count(graph, 0), 1);
  auto full = graph.full_span_classes(0);
  ASSERT_EQ(full.size(), 1u);
  EXPECT_TRUE(graph.is_root_connected(full[0]));
}

TEST(Parser, TwoFiveOneMatchesOracle) {
  auto c = chords("Dm7 G7 CM7");
  auto graph = parsed({{"251", c}});
  auto expected = oracle::complete_trees(c, graph.grammar());
  EXPECT_GE(expected.size(), 1u);
  EXPECT_EQ(piece_derivation_count(graph, 0), expected.size());
}

TEST(Parser, RandomPiecesMatchBruteForceTrees) {
  auto pieces = random_pieces(11, 60, 9);
  auto graph = parsed(pieces);
  int parseable = 0;
  for (PieceIndex p = 0; p < pieces.size(); ++p) {
    auto expected = oracle::complete_trees(pieces[p].chords, graph.grammar());
    std::vector<Template> oracle_set;
    for (const auto& t : expected) oracle_set.push_back(t.tmpl);
    std::vector<Template> engine_set;
    for (auto cls : graph.full_span_classes(p))
      for (auto& t : enumerate_derivations(graph, cls)) engine_set.push_back(std::move(t));
    EXPECT_EQ(sorted(engine_set), sorted(oracle_set)) << render_chords(pieces[p]);
    EXPECT_EQ(piece_derivation_count(graph, p), expected.size());
    parseable += !expected.empty();
  }
  EXPECT_GE(parseable, 10);  // enough parses for the comparison to mean something
}

TEST(Parser, TreesHaveTwoNMinusOneNodesAndReproduceTheSurface) {
  auto pieces = random_pieces(5, 40, 8);
  auto graph = parsed(pieces);
  std::size_t checked = 0;
  for (PieceIndex p = 0; p < pieces.size(); ++p) {
    for (const auto& key : graph.full_spans(p)) {
      for (const auto& t : enumerate_derivations(graph, *graph.find_der(key))) {
        ++checked;
        EXPECT_EQ(t.size(), 2 * pieces[p].chords.size() - 1);
        auto head = derive(t, pieces[p].chords, graph.grammar());
        ASSERT_TRUE(head);
        EXPECT_EQ(*head, graph.label(key.head));
      }
    }
  }
  EXPECT_GT(checked, 100u);
}

TEST(Parser, RootConnectedIsUnionOfCompleteTreeSpans) {
  auto pieces = random_pieces(23, 40, 9);
  auto graph = parsed(pieces);
  int unmarked_seen = 0;
  for (PieceIndex p = 0; p < pieces.size(); ++p) {
    std::set<std::tuple<ChordLabel, std::size_t, std::size_t>> expected;
    for (const auto& t : oracle::complete_trees(pieces[p].chords, graph.grammar()))
      for (const auto& c : oracle::constituents(t.tmpl, pieces[p].chords, graph.grammar()))
        expected.insert({c.head, c.begin, c.end});

    for (const auto& key : graph.spans()) {
      if (key.piece != p) continue;
      bool marked = graph.is_root_connected(*graph.find_der(key));
      bool in_some_tree = expected.contains({graph.label(key.head), key.begin, key.end});
      EXPECT_EQ(marked, in_some_tree) << graph.describe(key);
      unmarked_seen += !marked;
    }
  }
  EXPECT_GT(unmarked_seen, 0);  // the filter actually removed something
}

TEST(Parser, SemiNaiveEqualsNaive) {
  auto pieces = random_pieces(7, 25, 8);
  auto fast = parsed(pieces);
  auto slow = parsed(pieces, {.evaluation = eg::Evaluation::Naive});
  auto reversed = parsed(pieces, {.reverse_rule_order = true});
  for (const char* name : {tables::kIsPhrase, tables::kSplit, tables::kRootConnected}) {
    auto rows = [&](const DerivationGraph& g) {
      auto span = g.db().table(name).rows();
      return std::set<eg::Row>(span.begin(), span.end());
    };
    EXPECT_EQ(rows(fast), rows(slow)) << name;
    EXPECT_EQ(rows(fast), rows(reversed)) << name;
  }
  EXPECT_EQ(fast.egraph().num_classes(), slow.egraph().num_classes());
  EXPECT_EQ(fast.egraph().num_nodes(), slow.egraph().num_nodes());
}

TEST(Parser, DerivationNodesAreShared) {
  auto c = chords("Dm7 G7 CM7 Am7 Dm7 G7 CM7 FM7 Bb7 CM7");
  auto graph = parsed({{"shared", c}});
  auto trees = oracle::complete_trees(c, graph.grammar());
  ASSERT_GT(trees.size(), 1u);
  std::size_t tree_nodes = 0;
  for (const auto& t : trees) tree_nodes += t.tmpl.size();
  std::size_t template_nodes = 0;
  for (auto cls : graph.egraph().class_ids()) template_nodes += graph.template_nodes(cls).size();
  EXPECT_LT(template_nodes, tree_nodes);
}

TEST(Counting, SumsAlternativesAndMultipliesChildren) {
  DerivationGraph graph(default_grammar());
  auto& g = graph.egraph();
  auto term = *graph.grammar().find("term");
  auto fifth = *graph.grammar().find("descending_fifth");
  auto leaf = [&](std::uint32_t site) { return g.add(ENode{graph.pure_op(term), site, {}}); };
  auto a = leaf(1);
  g.unite(a, leaf(2));  // count 2
  auto b = leaf(3);
  g.unite(b, leaf(4));
  g.unite(b, leaf(5));  // count 3
  auto one = leaf(6);
  g.rebuild();
  auto x = g.add(ENode{graph.compose_op(fifth), 0, {a, one}});
  auto y = g.add(ENode{graph.compose_op(fifth), 0, {one, b}});
  EXPECT_EQ(count_derivations(graph, x), 2);
  EXPECT_EQ(count_derivations(graph, y), 3);
  g.unite(x, y);
  g.rebuild();
  EXPECT_EQ(count_derivations(graph, x), 5);
  EXPECT_EQ(count_derivations(graph, one), 1);

  auto cyc = g.add(ENode{graph.compose_op(fifth), 0, {x, one}});
  g.unite(cyc, x);
  g.rebuild();
  EXPECT_THROW(count_derivations(graph, x), CycleError);
}

TEST(Forest, JsonIsKeyedBySpan) {
  auto graph = parsed({{"251", chords("Dm7 G7 CM7")}});
  auto doc = forest_to_json(graph);
  ASSERT_EQ(doc["pieces"].size(), 1u);
  EXPECT_EQ(doc["pieces"][0]["title"], "251");
  EXPECT_EQ(doc["pieces"][0]["length"], 3);
  bool found_full = false;
  for (const auto& span : doc["spans"]) {
    EXPECT_TRUE(span.contains("head"));
    if (span["i"] == 0 && span["j"] == 3) {
      found_full = true;
      EXPECT_TRUE(span["root_connected"].get<bool>());
    }
  }
  EXPECT_TRUE(found_full);
  auto dot = forest_to_dot(graph);
  EXPECT_NE(dot.find("digraph forest"), std::string::npos);
  EXPECT_NE(dot.find("descending_fifth"), std::string::npos);
}
