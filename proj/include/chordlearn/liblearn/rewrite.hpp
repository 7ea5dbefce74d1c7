#pragma once

#include <map>
#include <string>
#include <vector>

#include "chordlearn/parser/derivation_graph.hpp"

namespace chordlearn {

/// A candidate abstraction: a pattern body whose holes become parameters.
struct Abstraction {
  FnId id = 0;
  Template body;
  std::size_t arity = 0;
  std::size_t def_size = 0;
};

/// Storage charged for one definition: every node of the body, holes included.
std::size_t definition_size(const Template& body);

/// One abstraction per pattern, ids in pattern order.
std::vector<Abstraction> make_abstractions(const std::vector<Template>& patterns);

/// Sum of definition sizes of `library` (ids into `abstractions`).
std::size_t storage_cost(const std::vector<Abstraction>& abstractions, const std::vector<FnId>& library);

enum class Sharing { Additive, Dag };

/// Storage cost of a library. Additive charges every body in full. Dag writes each
/// body with the library's smaller abstractions where that is shorter, so a shared
/// sub-abstraction is paid for once (an application costs 1 plus its arguments).
class StorageModel {
 public:
  explicit StorageModel(const std::vector<Abstraction>& abstractions, Sharing sharing = Sharing::Dag);

  std::size_t storage(const std::vector<FnId>& library);
  /// Size of `fn`'s body written with the other members of `library`.
  std::size_t body_size(FnId fn, const std::vector<FnId>& library) const;
  /// The body of `fn` rewritten with the other members of `library`.
  Template body_program(FnId fn, const std::vector<FnId>& library) const;
  Sharing sharing() const { return sharing_; }

 private:
  const std::vector<Abstraction>& abstractions_;
  Sharing sharing_;
  std::map<std::vector<FnId>, std::size_t> memo_;
};

struct Rewrite {
  FnId fn = 0;
  Template pattern;
};

std::vector<Rewrite> generate_rewrites(const std::vector<Abstraction>& abstractions);

struct RewriteReport {
  std::size_t iterations = 0;
  std::size_t applications = 0;
  std::size_t new_nodes = 0;
  bool saturated = true;
};

/// Adds `App fn <routing> [args]` to every root-connected class where the pattern
/// matches; hole bindings that are the same class share one argument. The node
/// carries the class's site tag so applications in different spans stay apart.
RewriteReport saturate_with_patterns(DerivationGraph& graph, const std::vector<Rewrite>& rewrites,
                                     std::size_t iteration_cap = 10'000);

}  // namespace chordlearn
