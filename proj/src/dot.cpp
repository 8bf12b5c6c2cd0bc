#include "causeway/dot.hpp"

#include <algorithm>

namespace causeway {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string graph_to_dot(const ProvenanceGraph& g) {
  ProvenanceGraph canon = g;
  canon.canonicalize();

  std::string out = "digraph provenance {\n";
  for (const ArtifactNode& a : canon.artifacts) {
    out += "  " + quoted(a.id) + " [shape=oval, label=" +
           quoted(a.id + " = " + a.value.str());
    if (a.id == canon.result) out += ", peripheries=2";
    out += "];\n";
  }
  for (const ProcessNode& p : canon.processes) {
    std::string label = p.id == p.name ? p.id : p.id + " : " + p.name;
    out += "  " + quoted(p.id) + " [shape=box, label=" + quoted(label) + "];\n";
  }
  for (const UsedEdge& e : canon.used)
    out += "  " + quoted(e.process) + " -> " + quoted(e.artifact) + " [label=\"" +
           std::to_string(e.position) + "\"];\n";
  for (const GeneratedEdge& e : canon.generated)
    out += "  " + quoted(e.artifact) + " -> " + quoted(e.process) + ";\n";
  out += "}\n";
  return out;
}

std::string model_to_dot(const CausalModel& m) {
  std::string out = "digraph model {\n";
  for (const std::string& u : m.exogenous())
    out += "  " + quoted(u) + " [shape=oval, style=dashed];\n";
  for (const std::string& v : m.endogenous()) out += "  " + quoted(v) + " [shape=oval];\n";
  for (const auto& [parent, child] : m.syntactic_graph().edges())
    out += "  " + quoted(parent) + " -> " + quoted(child) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace causeway
