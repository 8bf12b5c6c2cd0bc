#ifndef CAUSEWAY_APPROXIMATION_HPP
#define CAUSEWAY_APPROXIMATION_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "causeway/model.hpp"
#include "causeway/provenance.hpp"

namespace causeway {

// The n-tuples over a domain, enumerated in lexicographic order (leftmost
// coordinate most significant, domain elements in their canonical order).
class InputSpace {
 public:
  InputSpace(Domain domain, int arity);

  const Domain& domain() const { return domain_; }
  int arity() const { return arity_; }
  std::uint64_t size() const { return size_; }

  std::vector<Value> tuple_at(std::uint64_t index) const;
  std::uint64_t index_of(std::span<const Value> tuple) const;

  static std::string tuple_str(std::span<const Value> tuple);  // "(0, 1, bot)"

  friend bool operator==(const InputSpace&, const InputSpace&) = default;

 private:
  Domain domain_;
  int arity_;
  std::uint64_t size_;
};

// A total function D^n -> D given extensionally or by any callable; the
// opaque thing a provenance semantics tries to approximate.
class BlackBoxFunction {
 public:
  BlackBoxFunction(InputSpace space, std::function<Value(std::span<const Value>)> fn,
                   std::string label);

  // Reads a model as the function from its exogenous variables (sorted, the
  // tuple order) to one endogenous result variable.
  static BlackBoxFunction from_model(const CausalModel& m, const std::string& result);
  static BlackBoxFunction from_graph(ProvenanceGraph g, Interpretation interp);
  static BlackBoxFunction from_expression(const Domain& dom, std::vector<std::string> params,
                                          Expression body, std::string label);

  const InputSpace& space() const { return space_; }
  const std::string& label() const { return label_; }
  Value operator()(std::span<const Value> u) const { return fn_(u); }

 private:
  InputSpace space_;
  std::function<Value(std::span<const Value>)> fn_;
  std::string label_;
};

// For a model the variable a functional reading returns: the last endogenous
// variable in evaluation order unless overridden.
std::string default_result_variable(const CausalModel& m);

// A family of functions f_tau : D^U -> D^V indexed by interventions tau,
// induced by a causal model (U = exogenous sorted, V = endogenous sorted).
// tau is contained in every f_tau output by construction.
class CausalFunction {
 public:
  explicit CausalFunction(CausalModel m);

  const std::vector<std::string>& inputs() const { return model_->exogenous(); }
  const std::vector<std::string>& variables() const { return model_->endogenous(); }
  const Domain& domain() const { return model_->domain(); }
  const CausalModel& model() const { return *model_; }

  // tau: (index into variables(), value) pairs; u aligned with inputs();
  // out sized variables().
  void apply(std::span<const std::pair<int, Value>> tau, std::span<const Value> u,
             std::span<Value> out) const;
  // Name-keyed convenience wrapper.
  Valuation apply(const Valuation& tau, const Valuation& u) const;

  bool same_signature(const CausalFunction& other) const;

 private:
  std::shared_ptr<const CausalModel> model_;
};

// A provenance-graph semantics: maps every input tuple to a graph over a
// fixed node set, all validating against one interpretation. Three shapes:
//   Constant  - per input, the reference graph's nodes with every process
//               relabeled const_<its value at that input> and all used
//               edges dropped; the trivial pointwise semantics
//   Fixed     - one graph for every input
//   CaseSplit - a graph per value of one designated input variable
class ProvenanceSemantics {
 public:
  enum class Kind { Constant, Fixed, CaseSplit };

  static ProvenanceSemantics constant(ProvenanceGraph reference, Interpretation interp);
  static ProvenanceSemantics fixed(ProvenanceGraph g, Interpretation interp);
  // split_input: position in the graphs' designated input list; cases must
  // cover the whole domain and share node sets and input lists.
  static ProvenanceSemantics case_split(int split_input,
                                        std::map<Value, ProvenanceGraph> cases,
                                        Interpretation interp);

  Kind kind() const { return kind_; }
  const Interpretation& interp() const { return interp_; }
  const std::vector<std::string>& input_ids() const { return inputs_; }
  int arity() const { return static_cast<int>(inputs_.size()); }
  const Domain& domain() const { return interp_.domain(); }
  InputSpace space() const { return InputSpace(domain(), arity()); }
  std::string kind_str() const;

  ProvenanceGraph graph_for(std::span<const Value> u) const;

  // Distinct graphs up to input-dependence: one per case (Fixed: 1,
  // CaseSplit: domain size, Constant: 0 - every input gets its own build).
  std::size_t case_count() const { return cases_.size(); }
  const ProvenanceGraph& case_graph(std::size_t i) const { return cases_[i].second; }
  // Which stored case serves u; -1 for Constant.
  int case_index_for(std::span<const Value> u) const;

 private:
  ProvenanceSemantics(Kind kind, Interpretation interp);

  Kind kind_;
  Interpretation interp_;
  std::vector<std::string> inputs_;
  std::vector<std::pair<Value, ProvenanceGraph>> cases_;  // keyed by split value
  int split_input_ = -1;
};

// The causal-mode view: input tuples (sorted exogenous order) to causal
// functions over one shared signature.
class CausalSemantics {
 public:
  // Compiles every case of a graph semantics (inputs stay exogenous).
  static CausalSemantics of_graph_semantics(const ProvenanceSemantics& sem);
  // The same model for every input.
  static CausalSemantics fixed_model(CausalModel m, std::string label);

  const std::vector<std::string>& inputs() const { return inputs_; }
  const std::vector<std::string>& variables() const { return variables_; }
  const Domain& domain() const { return domain_; }
  InputSpace space() const { return InputSpace(domain_, static_cast<int>(inputs_.size())); }
  const std::string& label() const { return label_; }

  CausalFunction function_for(std::span<const Value> u) const;

 private:
  CausalSemantics() = default;

  Domain domain_;
  std::vector<std::string> inputs_;
  std::vector<std::string> variables_;
  std::string label_;
  std::function<CausalFunction(std::span<const Value>)> producer_;
};

// Interventions tau to run a causal comparison over: every subset of the
// variables (sizes 0..max_size) crossed with every value tuple, subsets by
// size then lexicographically, values in domain order (rightmost fastest).
// max_size < 0 picks the default: everything when |V| <= 8, else 3.
std::vector<std::vector<std::pair<int, Value>>> enumerate_interventions(
    const std::vector<std::string>& variables, const Domain& dom, int max_size = -1);

std::string intervention_str(std::span<const std::pair<int, Value>> tau,
                             const std::vector<std::string>& variables);  // "[Y:=0, Z:=1]"

// Where two sides first disagreed.
struct Mismatch {
  std::vector<Value> u;                        // the input the semantics was built for
  std::optional<std::vector<Value>> u_prime;   // the probed input, when it differs
  std::optional<std::string> tau;              // rendered intervention, causal mode
  std::string at;                              // "result" or a variable name
  Value expected;                              // target's value
  Value got;                                   // semantics' value

  std::string str() const;
};

struct CheckResult {
  bool holds = false;
  std::optional<Mismatch> counterexample;

  std::string str() const;  // "holds" | "fails: <counterexample>"
};

// Functional grades: does the graph built for u recompute f at u (pointwise)
// or at every input (global)?
CheckResult is_pointwise_approx(const ProvenanceSemantics& P, const BlackBoxFunction& f);
CheckResult is_global_approx(const ProvenanceSemantics& P, const BlackBoxFunction& f);

// Causal grades; agreement means equal full variable valuations.
//   pointwise: no intervention, at u only
//   local:     every intervention, at u only
//   global:    every intervention, at every input
CheckResult is_pointwise_approx(const CausalSemantics& P, const CausalFunction& f);
CheckResult is_local_approx(const CausalSemantics& P, const CausalFunction& f,
                            int max_tau_size = -1);
CheckResult is_global_approx(const CausalSemantics& P, const CausalFunction& f,
                             int max_tau_size = -1);

// u ~> u' iff the semantics' output for u predicts the target at u'
// (functional: equal result; causal: equal valuations under every tau).
class PredictivePowerRelation {
 public:
  PredictivePowerRelation(InputSpace space, std::vector<bool> matrix);

  const InputSpace& space() const { return space_; }
  bool related(std::uint64_t u_index, std::uint64_t u_prime_index) const;
  bool is_reflexive() const;
  bool is_total() const;
  std::uint64_t pair_count() const;  // related pairs
  double density() const;

  std::string dump() const;   // "(u) ~> (u')" per related pair, lexicographic
  std::string stats() const;  // reflexive/total/density summary

  friend bool operator==(const PredictivePowerRelation&, const PredictivePowerRelation&) = default;

 private:
  InputSpace space_;
  std::vector<bool> matrix_;  // row-major, row = u
};

inline constexpr std::uint64_t kDefaultPowerBudget = 1'000'000;

PredictivePowerRelation predictive_power(const ProvenanceSemantics& P, const BlackBoxFunction& f,
                                         std::uint64_t budget = kDefaultPowerBudget);
PredictivePowerRelation predictive_power(const CausalSemantics& P, const CausalFunction& f,
                                         int max_tau_size = -1,
                                         std::uint64_t budget = kDefaultPowerBudget);

enum class PowerOrdering { Equal, LessOrEqual, GreaterOrEqual, Incomparable };
const char* power_ordering_name(PowerOrdering o);

// Subset comparison; requires the same input space.
PowerOrdering compare_power(const PredictivePowerRelation& r1, const PredictivePowerRelation& r2);

}  // namespace causeway

#endif
