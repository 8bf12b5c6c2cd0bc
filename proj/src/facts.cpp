#include "causeway/facts.hpp"

#include <algorithm>

#include "causeway/error.hpp"

namespace causeway {

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::Used: return "used";
    case Relation::WasGeneratedBy: return "wasGeneratedBy";
    case Relation::WasDerivedFrom: return "wasDerivedFrom";
    case Relation::WasTriggeredBy: return "wasTriggeredBy";
    case Relation::WasDerivedFromPlus: return "wasDerivedFrom+";
    case Relation::WasTriggeredByPlus: return "wasTriggeredBy+";
  }
  return "?";
}

std::string EdgeFact::str() const {
  return std::string(relation_name(relation)) + "(" + subject + ", " + object + ")";
}

std::string RuleInstance::str() const {
  std::string s = rule + ":";
  for (std::size_t i = 0; i < premises.size(); ++i)
    s += (i ? ", " : " ") + premises[i].str();
  return s;
}

bool FactBase::add(const EdgeFact& f) { return facts_.insert(f).second; }

bool FactBase::add_derived(const EdgeFact& f, RuleInstance how) {
  if (!facts_.insert(f).second) return false;
  derivations_.emplace(f, std::move(how));
  return true;
}

std::vector<EdgeFact> FactBase::facts_of(Relation r) const {
  std::vector<EdgeFact> out;
  for (const EdgeFact& f : facts_)
    if (f.relation == r) out.push_back(f);
  return out;
}

const RuleInstance* FactBase::derivation_of(const EdgeFact& f) const {
  auto it = derivations_.find(f);
  return it == derivations_.end() ? nullptr : &it->second;
}

bool FactBase::is_subset_of(const FactBase& other) const {
  return std::includes(other.facts_.begin(), other.facts_.end(), facts_.begin(), facts_.end());
}

std::string FactBase::dump() const {
  std::vector<std::string> lines;
  for (const EdgeFact& f : facts_) lines.push_back(f.str());
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const std::string& l : lines) out += l + "\n";
  return out;
}

FactBase base_facts(const ProvenanceGraph& g) {
  FactBase fb;
  for (const UsedEdge& e : g.used) fb.add({Relation::Used, e.process, e.artifact});
  for (const GeneratedEdge& e : g.generated)
    fb.add({Relation::WasGeneratedBy, e.artifact, e.process});
  return fb;
}

namespace {

// Transitive-closure relation Plus over Base, semi-naive: round 0 embeds
// every Base fact; round k+1 prepends a Base step to the facts round k added.
void close_transitively(FactBase& fb, Relation base, Relation plus) {
  const std::string base_name = relation_name(base);
  const std::string plus_name = relation_name(plus);
  const std::vector<EdgeFact> steps = fb.facts_of(base);

  std::vector<EdgeFact> frontier;
  for (const EdgeFact& f : steps) {
    EdgeFact derived{plus, f.subject, f.object};
    if (fb.add_derived(derived, {plus_name, {f}})) frontier.push_back(derived);
  }
  while (!frontier.empty()) {
    std::vector<EdgeFact> next;
    for (const EdgeFact& reached : frontier)  // reached: z plus y
      for (const EdgeFact& step : steps)      // step:    x base z
        if (step.object == reached.subject) {
          EdgeFact derived{plus, step.subject, reached.object};
          if (fb.add_derived(derived, {plus_name, {step, reached}})) next.push_back(derived);
        }
    frontier = std::move(next);
  }
}

}  // namespace

FactBase datalog_closure(const FactBase& base) {
  FactBase fb = base;

  const std::vector<EdgeFact> used = fb.facts_of(Relation::Used);
  const std::vector<EdgeFact> wgb = fb.facts_of(Relation::WasGeneratedBy);

  // x wasDerivedFrom y :- x wasGeneratedBy p, p used y
  for (const EdgeFact& gen : wgb)
    for (const EdgeFact& use : used)
      if (gen.object == use.subject)
        fb.add_derived({Relation::WasDerivedFrom, gen.subject, use.object},
                       {"wasDerivedFrom", {gen, use}});

  // p wasTriggeredBy q :- p used x, x wasGeneratedBy q
  for (const EdgeFact& use : used)
    for (const EdgeFact& gen : wgb)
      if (use.object == gen.subject)
        fb.add_derived({Relation::WasTriggeredBy, use.subject, gen.object},
                       {"wasTriggeredBy", {use, gen}});

  close_transitively(fb, Relation::WasDerivedFrom, Relation::WasDerivedFromPlus);
  close_transitively(fb, Relation::WasTriggeredBy, Relation::WasTriggeredByPlus);
  return fb;
}

bool is_closed(const FactBase& facts) {
  const std::vector<EdgeFact> used = facts.facts_of(Relation::Used);
  const std::vector<EdgeFact> wgb = facts.facts_of(Relation::WasGeneratedBy);
  for (const EdgeFact& gen : wgb)
    for (const EdgeFact& use : used)
      if (gen.object == use.subject &&
          !facts.contains({Relation::WasDerivedFrom, gen.subject, use.object}))
        return false;
  for (const EdgeFact& use : used)
    for (const EdgeFact& gen : wgb)
      if (use.object == gen.subject &&
          !facts.contains({Relation::WasTriggeredBy, use.subject, gen.object}))
        return false;

  for (auto [base, plus] : {std::pair{Relation::WasDerivedFrom, Relation::WasDerivedFromPlus},
                            std::pair{Relation::WasTriggeredBy, Relation::WasTriggeredByPlus}}) {
    const std::vector<EdgeFact> steps = facts.facts_of(base);
    const std::vector<EdgeFact> closed = facts.facts_of(plus);
    for (const EdgeFact& f : steps)
      if (!facts.contains({plus, f.subject, f.object})) return false;
    for (const EdgeFact& step : steps)
      for (const EdgeFact& reached : closed)
        if (step.object == reached.subject &&
            !facts.contains({plus, step.subject, reached.object}))
          return false;
  }
  return true;
}

}  // namespace causeway
