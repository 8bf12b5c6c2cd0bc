#ifndef CAUSEWAY_CAUSE_HPP
#define CAUSEWAY_CAUSE_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "causeway/situation.hpp"

namespace causeway {

// Does X⃗ = x⃗ cause Y = y?
struct CauseQuery {
  std::vector<std::pair<std::string, Value>> cause;  // X⃗ = x⃗, name-sorted
  std::string effect;
  Value effect_value;
};

// A positive answer, carrying the contingency that witnessed it. Replaying
// the witness re-establishes both halves of the counterfactual test.
struct WitnessedCause {
  enum class Kind { Weak, Actual };

  CauseQuery query;
  std::vector<std::string> contingency;        // W, name-sorted
  std::vector<Value> contingency_values;       // w', aligned with contingency
  std::vector<Value> counterfactual_values;    // x', aligned with query.cause
  Kind kind = Kind::Weak;

  std::string str() const;
};

// Default bound on candidate-set size: CAUSEWAY_MAX_CAUSE_SIZE when set to a
// positive integer, otherwise 3.
int default_max_cause_size();

// Counterfactual dependence under some contingency. Searches contingency
// sets W by increasing size then lexicographically, counterfactual values in
// domain-element order (later tuple positions vary fastest); the first
// witness wins. Returns nullopt when the query's values are not the actual
// ones or no witness exists.
std::optional<WitnessedCause> is_weak_cause(const CausalSituation& sit, const CauseQuery& query);

// All minimal weak causes of effect = value with candidate sets of size
// 1..max_size, in enumeration order (size, then lexicographic).
std::vector<WitnessedCause> actual_causes(const CausalSituation& sit, const std::string& effect,
                                          Value effect_value, int max_size);

// True iff (var, value) appears in some actual cause of effect = effect_value.
// The effect itself is never part of its own cause.
bool is_part_of_cause(const CausalSituation& sit, const std::string& var, Value value,
                      const std::string& effect, Value effect_value, int max_size);

// Re-checks a stored witness through the plain intervene/evaluate interface
// (no search shortcuts); true iff both counterfactual conditions still hold.
bool replay_witness(const CausalSituation& sit, const WitnessedCause& witness);

// Precomputed part-of-cause lookups for every endogenous effect, at actual
// values; what the provenance audit drives its edge tests with.
class PartOfCauseIndex {
 public:
  PartOfCauseIndex(const CausalSituation& sit, int max_size);

  bool part_of(const std::string& var, const std::string& effect) const;
  const std::set<std::string>& cause_members(const std::string& effect) const;

 private:
  std::map<std::string, std::set<std::string>> members_;
};

}  // namespace causeway

#endif
