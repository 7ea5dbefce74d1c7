#include "chordlearn/liblearn/rewrite.hpp"

#include "chordlearn/antiunify/pattern.hpp"

namespace chordlearn {

std::size_t definition_size(const Template& body) { return body.size(); }

std::vector<Abstraction> make_abstractions(const std::vector<Template>& patterns) {
  std::vector<Abstraction> out;
  for (std::size_t i = 0; i < patterns.size(); ++i)
    out.push_back({static_cast<FnId>(i), patterns[i], patterns[i].hole_count(), definition_size(patterns[i])});
  return out;
}

std::size_t storage_cost(const std::vector<Abstraction>& abstractions, const std::vector<FnId>& library) {
  std::size_t total = 0;
  for (auto fn : library) total += abstractions.at(fn).def_size;
  return total;
}

namespace {

struct BodyWriter {
  const std::vector<Abstraction>& abstractions;
  std::vector<FnId> usable;
  std::map<const Template*, std::pair<std::size_t, Template>> memo;

  const std::pair<std::size_t, Template>& best(const Template& t) {
    if (auto it = memo.find(&t); it != memo.end()) return it->second;
    std::size_t size = 1;
    Template plain{t.kind, t.symbol, t.routing, {}};
    for (const auto& c : t.children) {
      const auto& sub = best(c);
      size += sub.first;
      plain.children.push_back(sub.second);
    }
    std::pair<std::size_t, Template> winner{size, std::move(plain)};
    for (auto g : usable) {
      std::vector<const Template*> bindings;
      if (!match_template(abstractions.at(g).body, t, bindings)) continue;
      std::vector<Template> values;
      for (const auto* b : bindings) values.push_back(*b);
      auto [routing, distinct] = route_arguments<Template>(values);
      std::size_t cost = 1;
      std::vector<Template> args;
      for (auto d : distinct) {
        const auto& sub = best(*bindings[d]);
        cost += sub.first;
        args.push_back(sub.second);
      }
      if (cost < winner.first) winner = {cost, Template::app(g, std::move(routing), std::move(args))};
    }
    return memo.emplace(&t, std::move(winner)).first->second;
  }
};

}  // namespace

StorageModel::StorageModel(const std::vector<Abstraction>& abstractions, Sharing sharing)
    : abstractions_(abstractions), sharing_(sharing) {}

Template StorageModel::body_program(FnId fn, const std::vector<FnId>& library) const {
  const auto& body = abstractions_.at(fn).body;
  if (sharing_ == Sharing::Additive) return body;
  // Only strictly smaller bodies may be used, which keeps the library acyclic.
  BodyWriter writer{abstractions_, {}, {}};
  for (auto g : library)
    if (g != fn && abstractions_.at(g).def_size < abstractions_.at(fn).def_size) writer.usable.push_back(g);
  return writer.best(body).second;
}

std::size_t StorageModel::body_size(FnId fn, const std::vector<FnId>& library) const {
  return body_program(fn, library).size();
}

std::size_t StorageModel::storage(const std::vector<FnId>& library) {
  if (sharing_ == Sharing::Additive) return storage_cost(abstractions_, library);
  if (auto it = memo_.find(library); it != memo_.end()) return it->second;
  std::size_t total = 0;
  for (auto fn : library) total += body_size(fn, library);
  memo_.emplace(library, total);
  return total;
}

std::vector<Rewrite> generate_rewrites(const std::vector<Abstraction>& abstractions) {
  std::vector<Rewrite> out;
  for (const auto& a : abstractions) out.push_back({a.id, a.body});
  return out;
}

RewriteReport saturate_with_patterns(DerivationGraph& graph, const std::vector<Rewrite>& rewrites,
                                     std::size_t iteration_cap) {
  RewriteReport report;
  auto& eg = graph.egraph();
  for (;;) {
    if (report.iterations >= iteration_cap) {
      report.saturated = false;
      break;
    }
    ++report.iterations;
    auto before = eg.num_nodes();
    bool merged = false;
    for (const auto& key : graph.spans()) {
      auto found = graph.find_der(key);
      if (!found || !graph.is_root_connected(*found)) continue;
      auto cls = eg.find(*found);
      for (const auto& rw : rewrites) {
        for (const auto& binding : match_pattern(graph, rw.pattern, cls)) {
          auto [routing, distinct] = route_arguments<EClassId>(binding);
          std::vector<EClassId> args;
          for (auto d : distinct) args.push_back(binding[d]);
          auto app = eg.add(ENode{graph.app_op(rw.fn, routing), graph.site_of(key), std::move(args)});
          merged |= eg.unite(app, cls);
          ++report.applications;
        }
      }
    }
    eg.rebuild();
    report.new_nodes += eg.num_nodes() - before;
    if (eg.num_nodes() == before && !merged) break;
  }
  return report;
}

}  // namespace chordlearn
