#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "chordlearn/egraph/egraph.hpp"

namespace chordlearn::eg {

using Value = std::int64_t;
using Row = std::vector<Value>;

struct RowHash {
  std::size_t operator()(const Row& row) const noexcept;
};

/// Insertion-ordered set of fixed-arity tuples with a hash index per column.
class Table {
 public:
  Table(std::string name, std::size_t arity);

  const std::string& name() const { return name_; }
  std::size_t arity() const { return arity_; }
  std::size_t size() const { return rows_.size(); }
  const Row& row(std::size_t index) const { return rows_[index]; }
  std::span<const Row> rows() const { return rows_; }
  bool contains(const Row& row) const { return present_.contains(row); }

  /// Returns true when the row was not present before.
  bool insert(Row row);

  /// Indices of rows whose `column` equals `value`, in insertion order.
  std::span<const std::size_t> with(std::size_t column, Value value) const;

 private:
  std::string name_;
  std::size_t arity_;
  std::vector<Row> rows_;
  std::unordered_set<Row, RowHash> present_;
  std::vector<std::unordered_map<Value, std::vector<std::size_t>>> index_;
};

/// The e-graph plus named relational tables, so rules can mix relational premises
/// with e-graph actions.
class Database {
 public:
  EGraph& egraph() { return egraph_; }
  const EGraph& egraph() const { return egraph_; }

  Table& declare(const std::string& name, std::size_t arity);
  Table& table(const std::string& name);
  const Table& table(const std::string& name) const;
  bool has_table(const std::string& name) const { return tables_.contains(name); }
  const std::map<std::string, Table>& tables() const { return tables_; }
  std::map<std::string, Table>& tables() { return tables_; }

 private:
  EGraph egraph_;
  std::map<std::string, Table> tables_;
};

enum class Evaluation { SemiNaive, Naive };

struct RunOptions {
  std::size_t iteration_cap = 10'000;
  Evaluation evaluation = Evaluation::SemiNaive;
  bool reverse_rule_order = false;
};

struct SaturationReport {
  std::size_t iterations = 0;
  std::size_t new_facts = 0;
  bool saturated = true;
};

class RuleContext;

struct Rule {
  std::string name;
  std::function<void(RuleContext&)> body;
};

struct Ruleset {
  std::string name;
  std::vector<Rule> rules;
};

/// What a rule body sees during one iteration. Table reads are frozen at the
/// iteration start; inserts are buffered until every rule has run. E-graph
/// actions apply immediately and are followed by a rebuild.
class RuleContext {
 public:
  struct Range {
    std::size_t begin = 0;
    std::size_t end = 0;
  };

  Database& db() { return db_; }
  EGraph& egraph() { return db_.egraph(); }
  std::size_t iteration() const { return iteration_; }

  /// Every row visible this iteration.
  Range all(const Table& table) const;
  /// Rows that became visible since the previous iteration (all rows under naive evaluation).
  Range recent(const Table& table) const;
  bool is_recent(const Table& table, std::size_t row) const;
  /// Visible rows whose `column` equals `value`.
  std::vector<std::size_t> with(const Table& table, std::size_t column, Value value) const;

  void insert(Table& table, Row row);
  EClassId add(ENode node);
  void unite(EClassId a, EClassId b);

 private:
  friend SaturationReport run_to_fixpoint(Database&, const Ruleset&, RunOptions);

  RuleContext(Database& db, std::size_t iteration, bool naive) : db_(db), iteration_(iteration), naive_(naive) {}

  Database& db_;
  std::size_t iteration_;
  bool naive_;
  std::unordered_map<const Table*, Range> windows_;
  std::vector<std::pair<Table*, Row>> buffered_;
  std::size_t new_nodes_ = 0;
  std::size_t new_unions_ = 0;
};

/// Applies `ruleset` until an iteration adds no row, node, or union, or until
/// `iteration_cap` productive iterations have run (then `saturated` is false).
SaturationReport run_to_fixpoint(Database& db, const Ruleset& ruleset, RunOptions options = {});

}  // namespace chordlearn::eg
