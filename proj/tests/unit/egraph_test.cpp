#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <random>
#include <set>

#include "chordlearn/egraph/database.hpp"
#include "chordlearn/egraph/dump.hpp"
#include "chordlearn/egraph/egraph.hpp"

using namespace chordlearn::eg;

namespace {

ENode leaf(EGraph& g, const char* op) { return ENode{g.symbols().intern(op), 0, {}}; }
ENode app(EGraph& g, const char* op, std::vector<EClassId> kids) { return ENode{g.symbols().intern(op), 0, std::move(kids)}; }

}  // namespace

TEST(EGraph, AddIsHashConsed) {
  EGraph g;
  auto a = g.add(leaf(g, "Pure r1"));
  auto b = g.add(leaf(g, "Pure r1"));
  EXPECT_EQ(a, b);
  EXPECT_EQ(g.num_nodes(), 1u);
}

TEST(EGraph, SiteSeparatesOtherwiseEqualNodes) {
  EGraph g;
  auto op = g.symbols().intern("Pure term");
  auto a = g.add(ENode{op, 1, {}});
  auto b = g.add(ENode{op, 2, {}});
  EXPECT_NE(a, b);
  EXPECT_EQ(g.add(ENode{op, 1, {}}), a);
}

TEST(EGraph, CongruenceAfterUnion) {
  EGraph g;
  auto a = g.add(leaf(g, "a"));
  auto b = g.add(leaf(g, "b"));
  auto fa = g.add(app(g, "f", {a}));
  g.unite(a, b);
  g.rebuild();
  auto fb = g.add(app(g, "f", {b}));
  EXPECT_EQ(g.find(fa), g.find(fb));
}

TEST(EGraph, UnionReportsChange) {
  EGraph g;
  auto a = g.add(leaf(g, "a"));
  auto b = g.add(leaf(g, "b"));
  EXPECT_FALSE(g.unite(a, a));
  EXPECT_TRUE(g.unite(a, b));
  EXPECT_FALSE(g.unite(b, a));
  EXPECT_EQ(g.find(g.find(a)), g.find(a));
}

TEST(EGraph, RebuildWithoutPendingUnionsIsNoOp) {
  EGraph g;
  auto a = g.add(leaf(g, "a"));
  g.add(app(g, "f", {a}));
  auto before = to_json(g);
  g.rebuild();
  EXPECT_EQ(to_json(g), before);
}

TEST(EGraph, ParentsMergeWhenChildrenMerge) {
  EGraph g;
  auto a = g.add(leaf(g, "a"));
  auto b = g.add(leaf(g, "b"));
  auto c = g.add(leaf(g, "c"));
  auto p = g.add(app(g, "g", {a, c}));
  auto q = g.add(app(g, "g", {b, c}));
  auto top1 = g.add(app(g, "h", {p}));
  auto top2 = g.add(app(g, "h", {q}));
  EXPECT_NE(g.find(p), g.find(q));
  g.unite(a, b);
  g.rebuild();
  EXPECT_EQ(g.find(p), g.find(q));
  EXPECT_EQ(g.find(top1), g.find(top2));
  EXPECT_EQ(g.num_nodes(), 5u);  // a|b, c, g(.,c), h(.)  with a and b still distinct nodes
}

TEST(EGraph, SlotValueAfterUnionIsJoin) {
  EGraph g;
  auto tags = g.add_slot<SetUnion<int>>("tags");
  std::vector<EClassId> ids;
  for (int i = 0; i < 6; ++i) {
    ids.push_back(g.add(ENode{g.symbols().intern("x"), static_cast<std::uint32_t>(i + 1), {}}));
    g.update_slot(tags, ids.back(), std::set<int>{i, i * 10});
  }
  g.unite(ids[0], ids[3]);
  g.unite(ids[3], ids[5]);
  g.unite(ids[1], ids[2]);
  g.rebuild();

  // Recompute from scratch: the union of the initial values over each class.
  std::map<std::uint32_t, std::set<int>> scratch;
  for (int i = 0; i < 6; ++i) {
    auto& s = scratch[g.find(ids[i]).value];
    s.insert(i);
    s.insert(i * 10);
  }
  for (auto& [cls, expected] : scratch) {
    const auto* value = g.slot(tags, EClassId{cls});
    ASSERT_NE(value, nullptr);
    EXPECT_EQ(*value, expected);
  }
}

TEST(EGraph, BoolOrJoin) {
  EGraph g;
  auto flag = g.add_slot<BoolOr>("root_connected");
  auto a = g.add(leaf(g, "a"));
  auto b = g.add(leaf(g, "b"));
  EXPECT_TRUE(g.update_slot(flag, a, true));
  EXPECT_FALSE(g.update_slot(flag, a, true));
  g.update_slot(flag, b, false);
  g.unite(a, b);
  g.rebuild();
  EXPECT_TRUE(*g.slot(flag, b));
}

namespace {

struct RandomGraph {
  struct Spec {
    std::string op;
    std::vector<std::size_t> kids;
  };
  std::vector<Spec> terms;
  std::vector<std::pair<std::size_t, std::size_t>> unions;
};

RandomGraph make_random_graph(std::mt19937& rng, std::size_t n_terms, std::size_t n_unions) {
  RandomGraph out;
  const char* leaves[] = {"a", "b", "c"};
  for (std::size_t i = 0; i < n_terms; ++i) {
    auto kind = i < 4 ? 0 : rng() % 3;
    if (kind == 0) {
      out.terms.push_back({leaves[rng() % 3], {}});
    } else if (kind == 1) {
      out.terms.push_back({"f", {rng() % i}});
    } else {
      out.terms.push_back({"g", {rng() % i, rng() % i}});
    }
  }
  for (std::size_t u = 0; u < n_unions; ++u) out.unions.emplace_back(rng() % n_terms, rng() % n_terms);
  return out;
}

/// Naive congruence closure over term indices: merge until no two terms with the
/// same operator and pairwise-equivalent children sit in different blocks.
std::vector<std::size_t> naive_closure(const RandomGraph& graph) {
  std::vector<std::size_t> block(graph.terms.size());
  std::iota(block.begin(), block.end(), 0);
  auto relabel = [&](std::size_t from, std::size_t to) {
    for (auto& b : block)
      if (b == from) b = to;
  };
  for (auto [x, y] : graph.unions)
    if (block[x] != block[y]) relabel(block[x], block[y]);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < graph.terms.size(); ++i) {
      for (std::size_t j = i + 1; j < graph.terms.size(); ++j) {
        const auto& ti = graph.terms[i];
        const auto& tj = graph.terms[j];
        if (block[i] == block[j] || ti.op != tj.op || ti.kids.size() != tj.kids.size()) continue;
        bool congruent = true;
        for (std::size_t k = 0; k < ti.kids.size(); ++k) congruent &= block[ti.kids[k]] == block[tj.kids[k]];
        if (congruent) {
          relabel(block[i], block[j]);
          changed = true;
        }
      }
    }
  }
  return block;
}

}  // namespace

TEST(EGraph, RandomGraphsMatchNaiveCongruenceClosure) {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 40; ++trial) {
    auto graph = make_random_graph(rng, 50, 6);
    EGraph g;
    std::vector<EClassId> ids;
    for (const auto& t : graph.terms) {
      ENode node{g.symbols().intern(t.op), 0, {}};
      for (auto k : t.kids) node.children.push_back(ids[k]);
      ids.push_back(g.add(node));
    }
    for (auto [x, y] : graph.unions) g.unite(ids[x], ids[y]);
    g.rebuild();

    auto oracle = naive_closure(graph);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        EXPECT_EQ(g.find(ids[i]) == g.find(ids[j]), oracle[i] == oracle[j]) << "trial " << trial << " terms " << i << "," << j;
      }
    }

    // Hash-cons uniqueness: no two stored nodes agree after canonicalization.
    std::set<ENode> seen;
    for (auto id : g.class_ids()) {
      for (const auto& node : g.eclass(id).nodes) EXPECT_TRUE(seen.insert(g.canonicalize(node)).second);
    }
  }
}

TEST(Fixpoint, EmptyRulesetSaturatesImmediately) {
  Database db;
  auto report = run_to_fixpoint(db, Ruleset{"empty", {}});
  EXPECT_EQ(report.iterations, 0u);
  EXPECT_TRUE(report.saturated);
}

namespace {

/// Transitive closure of a random edge relation, plus an e-graph action per path
/// that unions the endpoints' classes.
Ruleset closure_rules() {
  Rule base{"base", [](RuleContext& ctx) {
              auto& edge = ctx.db().table("Edge");
              auto& path = ctx.db().table("Path");
              auto r = ctx.recent(edge);
              for (auto i = r.begin; i < r.end; ++i) ctx.insert(path, edge.row(i));
            }};
  Rule step{"step", [](RuleContext& ctx) {
              auto& edge = ctx.db().table("Edge");
              auto& path = ctx.db().table("Path");
              auto r = ctx.recent(path);
              for (auto i = r.begin; i < r.end; ++i) {
                auto row = path.row(i);
                for (auto e : ctx.with(edge, 0, row[1])) ctx.insert(path, {row[0], edge.row(e)[1]});
              }
            }};
  Rule merge{"merge", [](RuleContext& ctx) {
               auto& path = ctx.db().table("Path");
               auto r = ctx.recent(path);
               auto op = ctx.egraph().symbols().intern("v");
               for (auto i = r.begin; i < r.end; ++i) {
                 const auto& row = path.row(i);
                 if (row[0] % 3 != row[1] % 3) continue;
                 auto a = ctx.add(ENode{op, static_cast<std::uint32_t>(row[0] + 1), {}});
                 auto b = ctx.add(ENode{op, static_cast<std::uint32_t>(row[1] + 1), {}});
                 ctx.unite(a, b);
               }
             }};
  return Ruleset{"closure", {base, step, merge}};
}

struct ClosureResult {
  std::set<Row> paths;
  std::set<std::set<std::uint32_t>> partition;
  SaturationReport report;
};

ClosureResult run_closure(const std::vector<std::pair<int, int>>& edges, RunOptions options) {
  Database db;
  auto& edge = db.declare("Edge", 2);
  db.declare("Path", 2);
  for (auto [a, b] : edges) edge.insert({a, b});
  ClosureResult out;
  out.report = run_to_fixpoint(db, closure_rules(), options);
  for (auto row : db.table("Path").rows()) out.paths.insert(row);
  std::map<std::uint32_t, std::set<std::uint32_t>> blocks;
  auto& g = db.egraph();
  for (auto id : g.class_ids())
    for (const auto& node : g.eclass(id).nodes) blocks[id.value].insert(node.site);
  for (auto& [k, v] : blocks) out.partition.insert(v);
  return out;
}

}  // namespace

TEST(Fixpoint, SemiNaiveEqualsNaive) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::pair<int, int>> edges;
    for (int e = 0; e < 25; ++e) edges.emplace_back(rng() % 15, rng() % 15);
    auto semi = run_closure(edges, {});
    auto naive = run_closure(edges, {.evaluation = Evaluation::Naive});
    auto reversed = run_closure(edges, {.reverse_rule_order = true});
    EXPECT_TRUE(semi.report.saturated);
    EXPECT_EQ(semi.paths, naive.paths);
    EXPECT_EQ(semi.partition, naive.partition);
    EXPECT_EQ(semi.paths, reversed.paths);
    EXPECT_EQ(semi.partition, reversed.partition);
  }
}

TEST(Fixpoint, IterationCapReportsUnsaturated) {
  std::vector<std::pair<int, int>> chain;
  for (int i = 0; i < 20; ++i) chain.emplace_back(i, i + 1);
  auto capped = run_closure(chain, {.iteration_cap = 3});
  EXPECT_FALSE(capped.report.saturated);
  EXPECT_EQ(capped.report.iterations, 3u);
  auto full = run_closure(chain, {});
  EXPECT_TRUE(full.report.saturated);
  EXPECT_EQ(full.paths.size(), 21u * 20u / 2u);
}

TEST(Fixpoint, SaturatedMeansOneMoreRunAddsNothing) {
  Database db;
  auto& edge = db.declare("Edge", 2);
  db.declare("Path", 2);
  for (int i = 0; i < 6; ++i) edge.insert({i, (i + 2) % 6});
  auto first = run_to_fixpoint(db, closure_rules());
  ASSERT_TRUE(first.saturated);
  auto nodes = db.egraph().num_nodes();
  auto paths = db.table("Path").size();
  auto again = run_to_fixpoint(db, closure_rules(), {.evaluation = Evaluation::Naive});
  EXPECT_EQ(again.new_facts, 0u);
  EXPECT_EQ(db.egraph().num_nodes(), nodes);
  EXPECT_EQ(db.table("Path").size(), paths);
}

TEST(Dump, JsonAndDotListEveryClass) {
  EGraph g;
  auto flag = g.add_slot<BoolOr>("marked");
  auto a = g.add(leaf(g, "a"));
  auto fa = g.add(app(g, "f", {a}));
  g.update_slot(flag, fa, true);
  auto json = to_json(g);
  EXPECT_EQ(json["num_classes"], 2);
  EXPECT_EQ(json["classes"][1]["nodes"][0]["op"], "f");
  EXPECT_EQ(json["classes"][1]["slots"]["marked"], true);
  auto dot = to_dot(g);
  EXPECT_NE(dot.find("cluster_0"), std::string::npos);
  EXPECT_NE(dot.find("n1_0 -> n0_0"), std::string::npos);
}
