#pragma once

#include <string>

#include <json.hpp>

#include "chordlearn/parser/derivation_graph.hpp"

namespace chordlearn {

/// Parse forest keyed by (title, head, i, j): per piece the full-span heads and
/// derivation counts, per span its packed alternatives.
nlohmann::json forest_to_json(const DerivationGraph& graph);

/// One box per span, one point per packed alternative, edges to child spans.
std::string forest_to_dot(const DerivationGraph& graph);

}  // namespace chordlearn
