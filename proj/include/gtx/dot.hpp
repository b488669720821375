#pragma once

#include <string>

#include "gtx/bc.hpp"
#include "gtx/gts.hpp"
#include "gtx/hypergraph.hpp"

namespace gtx {

/// Graphviz rendering: nodes as circles, hyperedges as labelled boxes with
/// one arc per tentacle carrying the port index. Interface elements are
/// drawn with doubled borders.
std::string to_dot(const Hypergraph& g, const std::string& name = "G");
std::string to_dot(const State& st, const std::string& name = "S");
std::string to_dot(const Rule& r);

} // namespace gtx
