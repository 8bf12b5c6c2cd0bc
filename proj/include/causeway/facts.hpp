#ifndef CAUSEWAY_FACTS_HPP
#define CAUSEWAY_FACTS_HPP

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "causeway/provenance.hpp"

namespace causeway {

// The six edge relations: the two base ones a graph asserts directly, the
// two the inference rules derive, and their transitive closures.
enum class Relation {
  Used,
  WasGeneratedBy,
  WasDerivedFrom,
  WasTriggeredBy,
  WasDerivedFromPlus,
  WasTriggeredByPlus,
};

const char* relation_name(Relation r);  // "used", "wasDerivedFrom+", ...
inline constexpr Relation kAllRelations[] = {
    Relation::Used,           Relation::WasGeneratedBy,     Relation::WasDerivedFrom,
    Relation::WasTriggeredBy, Relation::WasDerivedFromPlus, Relation::WasTriggeredByPlus,
};

struct EdgeFact {
  Relation relation;
  std::string subject;
  std::string object;

  std::string str() const;  // "used(mix, flour)"
  friend auto operator<=>(const EdgeFact&, const EdgeFact&) = default;
};

// How a derived fact came to be: the rule that fired and the premises it
// consumed (which replay: every premise is itself in the fact base).
struct RuleInstance {
  std::string rule;
  std::vector<EdgeFact> premises;

  std::string str() const;  // "wasDerivedFrom: wasGeneratedBy(batter, mix), used(mix, flour)"
};

class FactBase {
 public:
  bool contains(const EdgeFact& f) const { return facts_.count(f) != 0; }
  // Returns true when the fact was new. The derived overload records the
  // first derivation only; re-adding never overwrites.
  bool add(const EdgeFact& f);
  bool add_derived(const EdgeFact& f, RuleInstance how);

  const std::set<EdgeFact>& facts() const { return facts_; }
  std::vector<EdgeFact> facts_of(Relation r) const;
  std::size_t size() const { return facts_.size(); }
  // nullptr for base facts.
  const RuleInstance* derivation_of(const EdgeFact& f) const;

  bool is_subset_of(const FactBase& other) const;

  // One fact per line, lines sorted lexicographically.
  std::string dump() const;

 private:
  std::set<EdgeFact> facts_;
  std::map<EdgeFact, RuleInstance> derivations_;
};

// One used fact per used-edge (positions dropped, duplicates collapse), one
// wasGeneratedBy fact per generated-edge.
FactBase base_facts(const ProvenanceGraph& g);

// Least fixpoint of the four inference rules:
//   x wasDerivedFrom  y :- x wasGeneratedBy p, p used y
//   p wasTriggeredBy  q :- p used x, x wasGeneratedBy q
//   x wasDerivedFrom+ y :- x wasDerivedFrom y
//                        | x wasDerivedFrom z, z wasDerivedFrom+ y
//   p wasTriggeredBy+ q :- p wasTriggeredBy q
//                        | p wasTriggeredBy r, r wasTriggeredBy+ q
// Recursive rules run semi-naively (rounds over the previous round's new
// facts); each derived fact records its first derivation, which is the one
// found by round, then by sorted premise order — deterministic.
FactBase datalog_closure(const FactBase& base);

// True iff firing every rule on `facts` derives nothing new; what closure
// guarantees on its output.
bool is_closed(const FactBase& facts);

}  // namespace causeway

#endif
