#ifndef CAUSEWAY_DOT_HPP
#define CAUSEWAY_DOT_HPP

#include <string>

#include "causeway/model.hpp"
#include "causeway/provenance.hpp"

namespace causeway {

// Graphviz rendering. Artifacts are ovals labeled "id = value", processes are
// boxes; used edges point process -> artifact with their position, generated
// edges artifact -> process. The result node gets a double outline. Output is
// deterministic (nodes and edges in canonical order).
std::string graph_to_dot(const ProvenanceGraph& g);

// Variables as ovals (exogenous dashed), one edge per syntactic dependency.
std::string model_to_dot(const CausalModel& m);

}  // namespace causeway

#endif
