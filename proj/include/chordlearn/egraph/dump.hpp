#pragma once

#include <string>

#include <json.hpp>

#include "chordlearn/egraph/egraph.hpp"

namespace chordlearn::eg {

/// Classes (ascending id), their nodes, and every analysis slot with a value.
nlohmann::json to_json(const EGraph& egraph);

/// Graphviz rendering: one cluster per class, edges from nodes to child classes.
std::string to_dot(const EGraph& egraph);

}  // namespace chordlearn::eg
