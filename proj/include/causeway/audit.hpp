#ifndef CAUSEWAY_AUDIT_HPP
#define CAUSEWAY_AUDIT_HPP

#include <string>
#include <vector>

#include "causeway/cause.hpp"
#include "causeway/facts.hpp"
#include "causeway/provenance.hpp"

namespace causeway {

// Edges justified by the underlying counterfactual semantics. With the
// situation's part-of-actual-cause relation "part(s, t)" (the value of s
// belongs to some actual cause of t's value):
//
//   used(p, x)            part(x, p), and no third node m with part(x, m)
//                         and part(m, p) — x is an immediate cause of p
//   wasGeneratedBy(a, p)  symmetric: part(p, a) with no node in between
//   wasDerivedFrom(x, y)  part(y, x), and no *artifact* strictly between
//   wasDerivedFrom+(x, y) part(y, x), no betweenness constraint
//   wasTriggeredBy(p, q)  some artifact x with semantic used(p, x) and
//                         semantic wasGeneratedBy(x, q)
//   wasTriggeredBy+(p, q) transitive closure of semantic wasTriggeredBy
//
// sit must be the graph's compiled situation with proxied inputs, so that
// every node of g (sources included) is an endogenous variable.
FactBase semantic_edges(const CausalSituation& sit, const ProvenanceGraph& g, int max_cause_size);

// Datalog facts and semantic facts for one relation, partitioned.
struct RelationAudit {
  Relation relation;
  std::vector<EdgeFact> sound;    // derived and semantically justified
  std::vector<EdgeFact> unsound;  // derived, no semantic counterpart
  std::vector<EdgeFact> missed;   // semantically justified, never derived
};

struct AuditReport {
  std::vector<RelationAudit> relations;  // one entry per relation, fixed order

  bool is_sound() const;     // no unsound facts anywhere
  bool is_complete() const;  // no missed facts anywhere
  std::vector<EdgeFact> all_sound() const;
  std::vector<EdgeFact> all_unsound() const;
  std::vector<EdgeFact> all_missed() const;

  // Three sections (SOUND / UNSOUND / MISSED), facts sorted within each.
  std::string str() const;
  std::string json() const;
};

// Runs the Datalog closure and the semantic edge computation on the same
// graph and partitions the union of their facts.
AuditReport audit(const ProvenanceGraph& g, const Interpretation& interp, int max_cause_size);

}  // namespace causeway

#endif
