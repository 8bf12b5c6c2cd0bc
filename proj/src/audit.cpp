#include "causeway/audit.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "causeway/error.hpp"
#include "json.hpp"

namespace causeway {

FactBase semantic_edges(const CausalSituation& sit, const ProvenanceGraph& g,
                        int max_cause_size) {
  std::vector<std::string> artifact_ids, process_ids, node_ids;
  for (const ArtifactNode& a : g.artifacts) artifact_ids.push_back(a.id);
  for (const ProcessNode& p : g.processes) process_ids.push_back(p.id);
  std::sort(artifact_ids.begin(), artifact_ids.end());
  std::sort(process_ids.begin(), process_ids.end());
  node_ids = artifact_ids;
  node_ids.insert(node_ids.end(), process_ids.begin(), process_ids.end());
  std::sort(node_ids.begin(), node_ids.end());

  for (const std::string& id : node_ids)
    if (!sit.model().is_endogenous(id))
      throw Error("situation was not compiled from this graph (node '" + id +
                  "' is not an endogenous variable; compile with proxied inputs)");

  const PartOfCauseIndex index(sit, max_cause_size);
  auto part = [&](const std::string& s, const std::string& t) { return index.part_of(s, t); };
  auto none_between = [&](const std::string& far, const std::string& near,
                          const std::vector<std::string>& candidates) {
    for (const std::string& m : candidates)
      if (m != far && m != near && part(far, m) && part(m, near)) return false;
    return true;
  };

  FactBase fb;
  for (const std::string& p : process_ids)
    for (const std::string& x : artifact_ids)
      if (part(x, p) && none_between(x, p, node_ids)) fb.add({Relation::Used, p, x});
  for (const std::string& a : artifact_ids)
    for (const std::string& p : process_ids)
      if (part(p, a) && none_between(p, a, node_ids)) fb.add({Relation::WasGeneratedBy, a, p});
  for (const std::string& x : artifact_ids)
    for (const std::string& y : artifact_ids) {
      if (x == y) continue;
      if (!part(y, x)) continue;
      fb.add({Relation::WasDerivedFromPlus, x, y});
      if (none_between(y, x, artifact_ids)) fb.add({Relation::WasDerivedFrom, x, y});
    }

  // wasTriggeredBy: composition of the two base relations through an artifact.
  for (const std::string& p : process_ids)
    for (const std::string& q : process_ids) {
      if (p == q) continue;
      for (const std::string& x : artifact_ids)
        if (fb.contains({Relation::Used, p, x}) &&
            fb.contains({Relation::WasGeneratedBy, x, q})) {
          fb.add({Relation::WasTriggeredBy, p, q});
          break;
        }
    }
  // and its transitive closure
  std::vector<EdgeFact> frontier = fb.facts_of(Relation::WasTriggeredBy);
  const std::vector<EdgeFact> steps = frontier;
  for (const EdgeFact& f : frontier) fb.add({Relation::WasTriggeredByPlus, f.subject, f.object});
  while (!frontier.empty()) {
    std::vector<EdgeFact> next;
    for (const EdgeFact& reached : frontier)
      for (const EdgeFact& step : steps)
        if (step.object == reached.subject) {
          EdgeFact derived{Relation::WasTriggeredByPlus, step.subject, reached.object};
          if (fb.add(derived)) next.push_back(derived);
        }
    frontier = std::move(next);
  }
  return fb;
}

bool AuditReport::is_sound() const {
  for (const RelationAudit& r : relations)
    if (!r.unsound.empty()) return false;
  return true;
}

bool AuditReport::is_complete() const {
  for (const RelationAudit& r : relations)
    if (!r.missed.empty()) return false;
  return true;
}

namespace {

std::vector<EdgeFact> gather(const std::vector<RelationAudit>& relations,
                             std::vector<EdgeFact> RelationAudit::*member) {
  std::vector<EdgeFact> out;
  for (const RelationAudit& r : relations)
    out.insert(out.end(), (r.*member).begin(), (r.*member).end());
  std::sort(out.begin(), out.end(), [](const EdgeFact& a, const EdgeFact& b) {
    return a.str() < b.str();
  });
  return out;
}

void print_section(std::string& out, const char* title, const std::vector<EdgeFact>& facts) {
  out += std::string(title) + ":\n";
  if (facts.empty()) out += "  (none)\n";
  for (const EdgeFact& f : facts) out += "  " + f.str() + "\n";
}

}  // namespace

std::vector<EdgeFact> AuditReport::all_sound() const {
  return gather(relations, &RelationAudit::sound);
}
std::vector<EdgeFact> AuditReport::all_unsound() const {
  return gather(relations, &RelationAudit::unsound);
}
std::vector<EdgeFact> AuditReport::all_missed() const {
  return gather(relations, &RelationAudit::missed);
}

std::string AuditReport::str() const {
  std::string out;
  print_section(out, "SOUND", all_sound());
  print_section(out, "UNSOUND", all_unsound());
  print_section(out, "MISSED", all_missed());
  return out;
}

std::string AuditReport::json() const {
  nlohmann::ordered_json doc;
  auto encode = [](const std::vector<EdgeFact>& facts) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const EdgeFact& f : facts)
      arr.push_back({{"relation", relation_name(f.relation)},
                     {"subject", f.subject},
                     {"object", f.object}});
    return arr;
  };
  doc["sound"] = encode(all_sound());
  doc["unsound"] = encode(all_unsound());
  doc["missed"] = encode(all_missed());
  return doc.dump(2) + "\n";
}

AuditReport audit(const ProvenanceGraph& g, const Interpretation& interp, int max_cause_size) {
  const FactBase derived = datalog_closure(base_facts(g));
  const CompiledGraph compiled = compile_graph(g, interp, /*proxy_inputs=*/true);
  const CausalSituation sit = compiled.situation();
  const FactBase semantic = semantic_edges(sit, g, max_cause_size);

  AuditReport report;
  for (Relation r : kAllRelations) {
    RelationAudit ra{r, {}, {}, {}};
    for (const EdgeFact& f : derived.facts_of(r))
      (semantic.contains(f) ? ra.sound : ra.unsound).push_back(f);
    for (const EdgeFact& f : semantic.facts_of(r))
      if (!derived.contains(f)) ra.missed.push_back(f);
    report.relations.push_back(std::move(ra));
  }
  return report;
}

}  // namespace causeway
