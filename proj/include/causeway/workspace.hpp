#ifndef CAUSEWAY_WORKSPACE_HPP
#define CAUSEWAY_WORKSPACE_HPP

#include <map>
#include <string>
#include <vector>

#include "causeway/approximation.hpp"
#include "causeway/model.hpp"
#include "causeway/provenance.hpp"

namespace causeway {

// Named registry of loaded artifacts; names are unique per kind and lookups
// of unknown names throw with the known names listed.
class Workspace {
 public:
  void add_model(const std::string& name, CausalModel m);
  void add_graph(const std::string& name, ProvenanceGraph g);
  void add_interpretation(const std::string& name, Interpretation interp);
  void add_semantics(const std::string& name, ProvenanceSemantics sem);

  bool has_model(const std::string& name) const { return models_.count(name) != 0; }
  bool has_graph(const std::string& name) const { return graphs_.count(name) != 0; }
  bool has_interpretation(const std::string& name) const { return interps_.count(name) != 0; }
  bool has_semantics(const std::string& name) const { return semantics_.count(name) != 0; }

  const CausalModel& model(const std::string& name) const;
  const ProvenanceGraph& graph(const std::string& name) const;
  const Interpretation& interpretation(const std::string& name) const;
  const ProvenanceSemantics& semantics(const std::string& name) const;

  std::vector<std::string> graph_names() const;

 private:
  std::map<std::string, CausalModel> models_;
  std::map<std::string, ProvenanceGraph> graphs_;
  std::map<std::string, Interpretation> interps_;
  std::map<std::string, ProvenanceSemantics> semantics_;
};

std::string read_file(const std::string& path);

// Semantics definition format, line-based with # comments:
//   domain ...                        optional; must match the interpretation
//   interp <path>                     required, once
//   graph <name> <path>               any number, names unique
//   semantics constant-graph          needs exactly one declared graph
//   semantics fixed-graph <name>
//   semantics case-split <input> { <value> -> <name> ; ... }
// Relative paths resolve against the definition file's directory.
struct LoadedSemantics {
  Workspace workspace;  // the interpretation (as "interp") and every graph
  ProvenanceSemantics semantics;
};

LoadedSemantics parse_semantics_file(const std::string& text, const std::string& base_dir);
LoadedSemantics load_semantics_file(const std::string& path);

}  // namespace causeway

#endif
