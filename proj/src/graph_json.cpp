#include "causeway/graph_json.hpp"

#include <algorithm>
#include <set>

#include "causeway/error.hpp"
#include "json.hpp"

namespace causeway {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void malformed(const std::string& what) {
  throw Error("graph document: " + what);
}

void check_keys(const ordered_json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
  for (const auto& item : obj.items())
    if (!allowed.count(item.key()))
      malformed("unknown key '" + item.key() + "' in " + where);
}

std::string get_string(const ordered_json& obj, const std::string& key,
                       const std::string& where) {
  if (!obj.contains(key)) malformed("missing key '" + key + "' in " + where);
  if (!obj[key].is_string()) malformed("key '" + key + "' in " + where + " must be a string");
  return obj[key].get<std::string>();
}

Value parse_value(const ordered_json& j, const std::string& where) {
  if (j.is_string()) {
    if (j.get<std::string>() == "bot") return Value::bottom();
    malformed("value in " + where + " must be a non-negative integer or \"bot\"");
  }
  if (!j.is_number_integer() || j.get<long long>() < 0)
    malformed("value in " + where + " must be a non-negative integer or \"bot\"");
  return Value::of(j.get<int>());
}

}  // namespace

ProvenanceGraph parse_graph(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(line, col, "malformed JSON");
  }
  if (!doc.is_object()) malformed("top level must be an object");
  check_keys(doc, {"artifacts", "processes", "inputs", "result"}, "graph document");
  for (const char* key : {"artifacts", "processes", "inputs", "result"})
    if (!doc.contains(key)) malformed(std::string("missing key '") + key + "'");

  ProvenanceGraph g;
  std::set<std::string> artifact_ids, all_ids;

  if (!doc["artifacts"].is_array()) malformed("'artifacts' must be a list");
  for (const ordered_json& ja : doc["artifacts"]) {
    if (!ja.is_object()) malformed("artifact entries must be objects");
    check_keys(ja, {"id", "value"}, "artifact entry");
    std::string id = get_string(ja, "id", "artifact entry");
    if (!ja.contains("value")) malformed("missing key 'value' in artifact '" + id + "'");
    Value v = parse_value(ja["value"], "artifact '" + id + "'");
    if (!all_ids.insert(id).second) malformed("duplicate id '" + id + "'");
    artifact_ids.insert(id);
    g.artifacts.push_back({id, v});
  }

  if (!doc["processes"].is_array()) malformed("'processes' must be a list");
  for (const ordered_json& jp : doc["processes"]) {
    if (!jp.is_object()) malformed("process entries must be objects");
    check_keys(jp, {"id", "name", "uses", "generates"}, "process entry");
    std::string id = get_string(jp, "id", "process entry");
    std::string name = get_string(jp, "name", "process '" + id + "'");
    if (!all_ids.insert(id).second) malformed("duplicate id '" + id + "'");
    g.processes.push_back({id, name});

    if (jp.contains("uses")) {
      if (!jp["uses"].is_array()) malformed("'uses' of process '" + id + "' must be a list");
      for (const ordered_json& ju : jp["uses"]) {
        if (!ju.is_array() || ju.size() != 2 || !ju[0].is_string() || !ju[1].is_number_integer())
          malformed("entries of 'uses' in process '" + id + "' must be [artifact-id, position]");
        std::string target = ju[0].get<std::string>();
        int position = ju[1].get<int>();
        if (position < 1)
          malformed("position " + std::to_string(position) + " in process '" + id +
                    "' must be 1-based");
        if (!artifact_ids.count(target))
          malformed("process '" + id + "' uses undeclared artifact '" + target + "'");
        g.used.push_back({id, target, position});
      }
    }
    if (jp.contains("generates")) {
      const ordered_json& jg = jp["generates"];
      std::vector<std::string> targets;
      if (jg.is_string()) {
        targets.push_back(jg.get<std::string>());
      } else if (jg.is_array()) {
        for (const ordered_json& t : jg) {
          if (!t.is_string())
            malformed("'generates' of process '" + id + "' must name artifacts");
          targets.push_back(t.get<std::string>());
        }
      } else {
        malformed("'generates' of process '" + id + "' must be an id or a list of ids");
      }
      for (const std::string& target : targets) {
        if (!artifact_ids.count(target))
          malformed("process '" + id + "' generates undeclared artifact '" + target + "'");
        g.generated.push_back({target, id});
      }
    }
  }

  if (!doc["inputs"].is_array()) malformed("'inputs' must be a list");
  std::set<std::string> seen_inputs;
  for (const ordered_json& ji : doc["inputs"]) {
    if (!ji.is_string()) malformed("'inputs' must be a list of artifact ids");
    std::string id = ji.get<std::string>();
    if (!artifact_ids.count(id)) malformed("input '" + id + "' is not a declared artifact");
    if (!seen_inputs.insert(id).second) malformed("duplicate input '" + id + "'");
    g.inputs.push_back(id);
  }

  if (!doc["result"].is_string()) malformed("'result' must be an artifact id");
  g.result = doc["result"].get<std::string>();
  if (!artifact_ids.count(g.result))
    malformed("result '" + g.result + "' is not a declared artifact");

  g.canonicalize();
  return g;
}

std::string graph_to_json(const ProvenanceGraph& graph) {
  ProvenanceGraph g = graph;
  g.canonicalize();

  ordered_json doc;
  doc["artifacts"] = ordered_json::array();
  for (const ArtifactNode& a : g.artifacts) {
    ordered_json ja;
    ja["id"] = a.id;
    if (a.value.is_bottom())
      ja["value"] = "bot";
    else
      ja["value"] = a.value.ordinary();
    doc["artifacts"].push_back(ja);
  }
  doc["processes"] = ordered_json::array();
  for (const ProcessNode& p : g.processes) {
    ordered_json jp;
    jp["id"] = p.id;
    jp["name"] = p.name;
    jp["uses"] = ordered_json::array();
    for (const UsedEdge& e : g.used_by(p.id))
      jp["uses"].push_back(ordered_json::array({e.artifact, e.position}));
    std::vector<std::string> targets = g.generated_by(p.id);
    if (targets.size() == 1)
      jp["generates"] = targets.front();
    else if (!targets.empty())
      jp["generates"] = targets;
    doc["processes"].push_back(jp);
  }
  doc["inputs"] = g.inputs;
  doc["result"] = g.result;
  return doc.dump(2) + "\n";
}

}  // namespace causeway
