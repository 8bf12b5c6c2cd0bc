#ifndef CAUSEWAY_MODEL_HPP
#define CAUSEWAY_MODEL_HPP

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "causeway/domain.hpp"
#include "causeway/expression.hpp"

namespace causeway {

// A (possibly partial) assignment of values to named variables.
class Valuation {
 public:
  Valuation() = default;
  explicit Valuation(std::map<std::string, Value> entries) : entries_(std::move(entries)) {}

  void set(const std::string& name, Value v) { entries_[name] = v; }
  bool has(const std::string& name) const { return entries_.count(name) != 0; }
  std::optional<Value> get(const std::string& name) const;
  Value at(const std::string& name) const;  // throws if absent

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::map<std::string, Value>& entries() const { return entries_; }

  bool covers(const std::vector<std::string>& names) const;
  Valuation restricted_to(const std::vector<std::string>& names) const;

  std::string str() const;  // "A=1, B=0" in name order

  friend bool operator==(const Valuation&, const Valuation&) = default;

 private:
  std::map<std::string, Value> entries_;
};

// A directed graph over variable names with edges parent -> child.
class CausalGraph {
 public:
  CausalGraph() = default;
  CausalGraph(std::vector<std::string> vertices,
              std::map<std::string, std::vector<std::string>> parents);

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<std::string>& parents_of(const std::string& child) const;
  std::vector<std::pair<std::string, std::string>> edges() const;  // (parent, child), sorted
  bool has_edge(const std::string& parent, const std::string& child) const;

  // Reflexive-transitive: includes v itself.
  std::set<std::string> descendants_of(const std::string& v) const;

  bool is_subgraph_of(const CausalGraph& other) const;

  friend bool operator==(const CausalGraph&, const CausalGraph&) = default;

 private:
  std::vector<std::string> vertices_;                       // sorted
  std::map<std::string, std::vector<std::string>> parents_;  // child -> sorted parents
  std::map<std::string, std::vector<std::string>> children_;
};

// A structural model: exogenous variables, endogenous variables, and one
// mechanism per endogenous variable. The dependency structure must be
// acyclic; evaluation is the unique solution of the mechanism equations for
// a given exogenous assignment.
//
// Variables are also addressable by dense index (exogenous block first, then
// endogenous, each sorted by name); eval_state() is the allocation-light
// entry point the cause search uses, where interventions appear as pinned
// entries rather than rebuilt models.
class CausalModel {
 public:
  enum class Coverage { FullState, EndogenousOnly, Partial };

  CausalModel(Domain domain, std::vector<std::string> exogenous,
              std::vector<std::pair<std::string, Expression>> mechanisms);

  const Domain& domain() const { return domain_; }
  const std::vector<std::string>& exogenous() const { return exogenous_; }
  const std::vector<std::string>& endogenous() const { return endogenous_; }
  bool is_exogenous(const std::string& name) const;
  bool is_endogenous(const std::string& name) const;
  bool has_variable(const std::string& name) const { return index_.count(name) != 0; }
  const Expression& mechanism(const std::string& endo) const;

  // Unique solution of the equations under the given exogenous assignment;
  // the result covers all of U and V.
  Valuation evaluate(const Valuation& exogenous_assignment) const;

  // Replaces the mechanism of an endogenous variable with a constant.
  CausalModel intervene(const std::string& var, Value v) const;
  // Left-to-right composition; a later assignment to the same variable wins.
  CausalModel intervene(const std::vector<std::pair<std::string, Value>>& assignments) const;

  // True iff every mechanism agrees with the given full valuation over U and V.
  bool is_consistent(const Valuation& full) const;

  Coverage coverage_of(const Valuation& v) const;

  // Edges from every syntactically mentioned variable to the variable it
  // feeds, versus edges carrying a genuine dependency (two assignments that
  // differ only at the parent and produce different outputs). The least
  // graph is always a subgraph of the syntactic one.
  CausalGraph syntactic_graph() const;
  CausalGraph least_causal_graph() const;

  // --- dense-index interface -----------------------------------------------
  int num_vars() const { return static_cast<int>(vars_.size()); }
  int num_exogenous() const { return num_exo_; }
  int index_of(const std::string& name) const;  // -1 when absent
  const std::string& var_at(int i) const { return vars_[i]; }
  const std::vector<int>& topo_order() const { return topo_; }  // endogenous indices

  // state must be sized num_vars() with all exogenous entries filled in (and
  // any pinned endogenous entries). Computes the remaining endogenous values
  // in topological order. pinned may be empty (nothing pinned) or sized
  // num_vars().
  void eval_state(std::span<Value> state, std::span<const char> pinned = {}) const;

  Valuation state_to_valuation(std::span<const Value> state) const;

 private:
  struct Instr {
    enum class K { PushConst, PushVar, ApplyOp, ApplyTable } kind;
    Value constant;
    int var = -1;
    Op op = Op::And;
    int argc = 0;
    const LookupTable* table = nullptr;
  };
  struct Compiled {
    int var = -1;                  // the endogenous variable this defines
    std::vector<Instr> postfix;
    std::vector<int> parents;      // sorted indices of mentioned variables
    int max_stack = 0;
  };

  Value run_mechanism(const Compiled& mech, std::span<const Value> state) const;
  void compile_all();

  Domain domain_;
  std::vector<std::string> exogenous_;   // sorted
  std::vector<std::string> endogenous_;  // sorted
  std::map<std::string, Expression> source_;

  std::vector<std::string> vars_;  // exogenous_ then endogenous_
  int num_exo_ = 0;
  std::map<std::string, int> index_;
  std::vector<Compiled> compiled_;     // aligned with endogenous_
  std::vector<int> compiled_of_var_;   // var index -> position in compiled_, -1 for exogenous
  std::vector<int> topo_;              // endogenous indices in evaluation order
};

}  // namespace causeway

#endif
