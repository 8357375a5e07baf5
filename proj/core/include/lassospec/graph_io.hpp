#pragma once

#include <string>

#include "lassospec/json_out.hpp"
#include "lassospec/metric_graph.hpp"

namespace lassospec {

/// Parses the JSON graph format:
///   {"vertices": ["a","b"],
///    "edges": [{"id":"e1","from":"a","to":"b","length": 3.14}],
///    "dirichlet": ["a"]}
/// An edge may carry "length_pi" instead of "length" (exactly one of the
/// two), meaning length = coefficient * pi. Throws GraphError with a
/// position on syntax errors and with the violated invariant otherwise.
MetricGraph parse_graph(const std::string& text);

/// Canonical serialization; parse_graph(serialize_graph(g)) == g.
/// Emits "length_pi" for lengths constructed as pi-multiples.
std::string serialize_graph(const MetricGraph& g);

jout::Value graph_to_json(const MetricGraph& g);

}  // namespace lassospec
