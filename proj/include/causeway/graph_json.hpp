#ifndef CAUSEWAY_GRAPH_JSON_HPP
#define CAUSEWAY_GRAPH_JSON_HPP

#include <string>

#include "causeway/provenance.hpp"

namespace causeway {

// JSON document form of a provenance graph:
//
//   {
//     "artifacts": [{"id": "butter", "value": 1}, ...],   // value: int or "bot"
//     "processes": [{"id": "mix", "name": "mix3",
//                    "uses": [["butter", 1], ["sugar", 2]],
//                    "generates": "batter"}, ...],
//     "inputs": ["butter", "sugar"],
//     "result": "cake"
//   }
//
// Unknown keys are rejected. "generates" may be omitted (generates nothing)
// or hold a list of ids, so structurally broken graphs can still be written
// down and handed to validate. References to undeclared ids and duplicate
// ids are rejected at parse time.
ProvenanceGraph parse_graph(const std::string& text);

// Canonical form: nodes sorted by id, uses by position, two-space indent,
// trailing newline. parse_graph(graph_to_json(g)) == canonicalized g.
std::string graph_to_json(const ProvenanceGraph& g);

}  // namespace causeway

#endif
