#include "chordlearn/egraph/database.hpp"

#include <algorithm>
#include <stdexcept>

namespace chordlearn::eg {

std::size_t RowHash::operator()(const Row& row) const noexcept {
  std::size_t h = row.size();
  for (auto v : row) h ^= std::hash<Value>{}(v) + 0x9E3779B9 + (h << 6) + (h >> 2);
  return h;
}

Table::Table(std::string name, std::size_t arity) : name_(std::move(name)), arity_(arity), index_(arity) {}

bool Table::insert(Row row) {
  if (row.size() != arity_) throw std::invalid_argument("table " + name_ + ": row arity mismatch");
  if (!present_.insert(row).second) return false;
  auto position = rows_.size();
  for (std::size_t column = 0; column < arity_; ++column) index_[column][row[column]].push_back(position);
  rows_.push_back(std::move(row));
  return true;
}

std::span<const std::size_t> Table::with(std::size_t column, Value value) const {
  const auto& by_value = index_.at(column);
  if (auto it = by_value.find(value); it != by_value.end()) return it->second;
  return {};
}

Table& Database::declare(const std::string& name, std::size_t arity) {
  auto [it, inserted] = tables_.try_emplace(name, name, arity);
  if (!inserted && it->second.arity() != arity) throw std::invalid_argument("table " + name + " redeclared with another arity");
  return it->second;
}

Table& Database::table(const std::string& name) {
  auto it = tables_.find(name);
  if (it == tables_.end()) throw std::out_of_range("unknown table " + name);
  return it->second;
}

const Table& Database::table(const std::string& name) const {
  auto it = tables_.find(name);
  if (it == tables_.end()) throw std::out_of_range("unknown table " + name);
  return it->second;
}

RuleContext::Range RuleContext::all(const Table& table) const {
  auto it = windows_.find(&table);
  return it == windows_.end() ? Range{} : Range{0, it->second.end};
}

RuleContext::Range RuleContext::recent(const Table& table) const {
  auto it = windows_.find(&table);
  if (it == windows_.end()) return {};
  return naive_ ? Range{0, it->second.end} : it->second;
}

bool RuleContext::is_recent(const Table& table, std::size_t row) const {
  auto window = recent(table);
  return row >= window.begin && row < window.end;
}

std::vector<std::size_t> RuleContext::with(const Table& table, std::size_t column, Value value) const {
  auto end = all(table).end;
  std::vector<std::size_t> out;
  for (auto index : table.with(column, value)) {
    if (index >= end) break;
    out.push_back(index);
  }
  return out;
}

void RuleContext::insert(Table& table, Row row) { buffered_.emplace_back(&table, std::move(row)); }

EClassId RuleContext::add(ENode node) {
  auto before = egraph().num_nodes();
  auto id = egraph().add(std::move(node));
  if (egraph().num_nodes() != before) ++new_nodes_;
  return id;
}

void RuleContext::unite(EClassId a, EClassId b) {
  if (egraph().unite(a, b)) ++new_unions_;
}

SaturationReport run_to_fixpoint(Database& db, const Ruleset& ruleset, RunOptions options) {
  SaturationReport report;
  std::unordered_map<const Table*, std::size_t> seen_until;
  const bool naive = options.evaluation == Evaluation::Naive;

  std::vector<const Rule*> order;
  for (const auto& rule : ruleset.rules) order.push_back(&rule);
  if (options.reverse_rule_order) std::reverse(order.begin(), order.end());

  while (report.iterations < options.iteration_cap) {
    RuleContext ctx(db, report.iterations, naive);
    for (auto& [name, table] : db.tables()) {
      ctx.windows_[&table] = {seen_until[&table], table.size()};
    }

    for (const auto* rule : order) rule->body(ctx);

    std::size_t new_rows = 0;
    for (auto& [table, row] : ctx.buffered_) new_rows += table->insert(std::move(row)) ? 1 : 0;
    db.egraph().rebuild();
    for (auto& [table, window] : ctx.windows_) seen_until[table] = window.end;

    auto produced = new_rows + ctx.new_nodes_ + ctx.new_unions_;
    if (produced == 0) return report;
    ++report.iterations;
    report.new_facts += produced;
  }
  report.saturated = false;
  return report;
}

}  // namespace chordlearn::eg
