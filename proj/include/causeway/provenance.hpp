#ifndef CAUSEWAY_PROVENANCE_HPP
#define CAUSEWAY_PROVENANCE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "causeway/expression.hpp"
#include "causeway/situation.hpp"

namespace causeway {

// A bipartite provenance record: artifacts carry data values, processes carry
// a function name; used edges run process -> artifact with an argument
// position, generated edges artifact -> process.
struct ArtifactNode {
  std::string id;
  Value value;
  friend bool operator==(const ArtifactNode&, const ArtifactNode&) = default;
};

struct ProcessNode {
  std::string id;
  std::string name;
  friend bool operator==(const ProcessNode&, const ProcessNode&) = default;
};

struct UsedEdge {
  std::string process;
  std::string artifact;
  int position = 1;  // 1-based
  friend auto operator<=>(const UsedEdge&, const UsedEdge&) = default;
};

struct GeneratedEdge {
  std::string artifact;
  std::string process;
  friend auto operator<=>(const GeneratedEdge&, const GeneratedEdge&) = default;
};

struct ProvenanceGraph {
  std::vector<ArtifactNode> artifacts;
  std::vector<ProcessNode> processes;
  std::vector<UsedEdge> used;
  std::vector<GeneratedEdge> generated;
  std::vector<std::string> inputs;  // designated input artifacts, in signature order
  std::string result;

  const ArtifactNode* find_artifact(const std::string& id) const;
  const ProcessNode* find_process(const std::string& id) const;
  bool is_input(const std::string& id) const;
  // Artifacts with no generating process (inputs are a subset of these).
  std::vector<std::string> source_artifacts() const;
  std::vector<UsedEdge> used_by(const std::string& process) const;       // by position
  std::vector<std::string> generated_by(const std::string& process) const;
  std::optional<std::string> generator_of(const std::string& artifact) const;

  // Sorts node and edge lists into canonical order (id, then position).
  void canonicalize();

  friend bool operator==(const ProvenanceGraph&, const ProvenanceGraph&) = default;
};

// Function assignment for process names: arity and a parameter-bound
// expression (lookup tables included) per name. Names of the form const_<v>
// (const_0, const_bot, ...) are implicitly present as 0-ary constants.
class Interpretation {
 public:
  struct Function {
    std::vector<std::string> params;
    Expression body;  // over params
  };

  Interpretation() = default;
  Interpretation(Domain domain, std::map<std::string, Function> functions);

  const Domain& domain() const { return domain_; }
  const std::map<std::string, Function>& functions() const { return functions_; }

  bool has(const std::string& name) const;
  int arity_of(const std::string& name) const;  // throws on unknown names
  Value apply(const std::string& name, std::span<const Value> args) const;

  static std::optional<Value> constant_process_value(const std::string& name, const Domain& dom);

 private:
  Domain domain_;
  std::map<std::string, Function> functions_;
};

// Structural health of a graph; flags are diagnostics, not exceptions.
struct ValidationReport {
  bool is_bipartite = true;   // edges connect existing artifacts and processes
  bool is_acyclic = true;
  bool is_functional = true;  // every process generates exactly one artifact
  std::optional<bool> is_sorted;  // unset when no interpretation was supplied
  std::vector<std::string> diagnostics;

  bool all_pass() const {
    return is_bipartite && is_acyclic && is_functional && is_sorted.value_or(false);
  }
  std::string str() const;
};

ValidationReport validate(const ProvenanceGraph& g, const Interpretation& interp);
ValidationReport validate_structure(const ProvenanceGraph& g);  // skips sortedness

// The function a graph denotes: assign the designated inputs, recompute every
// process and generated artifact in dependency order (stored labels of
// computed artifacts are ignored; non-input sources keep theirs), read the
// result node. This walks the graph directly and is deliberately a separate
// code path from compilation to a causal model.
class GraphFunction {
 public:
  GraphFunction(ProvenanceGraph g, Interpretation interp);

  int arity() const { return static_cast<int>(graph_.inputs.size()); }
  const std::vector<std::string>& input_ids() const { return graph_.inputs; }
  const Domain& domain() const { return interp_.domain(); }
  Value operator()(std::span<const Value> inputs) const;
  // The whole recomputed valuation operator() reads its result from.
  std::map<std::string, Value> node_values(std::span<const Value> inputs) const;

 private:
  ProvenanceGraph graph_;
  Interpretation interp_;
  std::vector<std::string> order_;  // node ids, dependency order
};

Value interpret_graph(const ProvenanceGraph& g, const Interpretation& interp,
                      std::span<const Value> inputs);

// Compilation to a structural model: sources become exogenous, every other
// artifact copies its generating process, every process applies its
// interpretation to the artifacts it uses. With proxy_inputs each source
// artifact instead becomes an endogenous copy of a fresh exogenous variable,
// which makes inputs eligible as causes.
struct CompiledGraph {
  CausalModel model;
  Valuation sigma;                                // full, consistent
  std::vector<std::string> artifact_vars;         // node ids, sorted
  std::vector<std::string> process_vars;          // node ids, sorted
  std::map<std::string, std::string> proxy_exo;   // node id -> fresh exogenous name
  bool proxied = false;

  CausalSituation situation() const { return CausalSituation(model, sigma); }
};

CompiledGraph compile_graph(const ProvenanceGraph& g, const Interpretation& interp,
                            bool proxy_inputs);
// The model alone, skipping the stored-label consistency check.
CausalModel graph_model(const ProvenanceGraph& g, const Interpretation& interp,
                        bool proxy_inputs);
CausalSituation to_causal_situation(const ProvenanceGraph& g, const Interpretation& interp,
                                    bool proxy_inputs);

// First-order term view of a tree-shaped graph (no artifact used twice, no
// process generating into sharing). Syntax: id:value for sources,
// id:value=pid:pname(children...) for generated artifacts, children in
// position order. Import designates sources as inputs in first-occurrence
// order, so export/import is the identity precisely on tree graphs whose
// input list already has that order.
std::string graph_to_term(const ProvenanceGraph& g);
ProvenanceGraph graph_from_term(const std::string& term);

}  // namespace causeway

#endif
