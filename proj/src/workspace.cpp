#include "causeway/workspace.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include "causeway/error.hpp"
#include "causeway/graph_json.hpp"
#include "causeway/text_format.hpp"

namespace causeway {

namespace {

template <typename M>
const typename M::mapped_type& lookup(const M& map, const std::string& name,
                                      const char* kind) {
  auto it = map.find(name);
  if (it != map.end()) return it->second;
  std::string msg = std::string("no ") + kind + " named '" + name + "'";
  if (!map.empty()) {
    msg += " (have:";
    for (const auto& [k, v] : map) msg += " " + k;
    msg += ")";
  }
  throw Error(msg);
}

template <typename M, typename V>
void insert_unique(M& map, const std::string& name, V value, const char* kind) {
  if (!map.emplace(name, std::move(value)).second)
    throw Error(std::string(kind) + " '" + name + "' is already loaded");
}

}  // namespace

void Workspace::add_model(const std::string& name, CausalModel m) {
  insert_unique(models_, name, std::move(m), "model");
}
void Workspace::add_graph(const std::string& name, ProvenanceGraph g) {
  insert_unique(graphs_, name, std::move(g), "graph");
}
void Workspace::add_interpretation(const std::string& name, Interpretation interp) {
  insert_unique(interps_, name, std::move(interp), "interpretation");
}
void Workspace::add_semantics(const std::string& name, ProvenanceSemantics sem) {
  insert_unique(semantics_, name, std::move(sem), "semantics");
}

const CausalModel& Workspace::model(const std::string& name) const {
  return lookup(models_, name, "model");
}
const ProvenanceGraph& Workspace::graph(const std::string& name) const {
  return lookup(graphs_, name, "graph");
}
const Interpretation& Workspace::interpretation(const std::string& name) const {
  return lookup(interps_, name, "interpretation");
}
const ProvenanceSemantics& Workspace::semantics(const std::string& name) const {
  return lookup(semantics_, name, "semantics");
}

std::vector<std::string> Workspace::graph_names() const {
  std::vector<std::string> names;
  for (const auto& [k, v] : graphs_) names.push_back(k);
  return names;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

std::string join_path(const std::string& base, const std::string& rel) {
  if (rel.empty() || rel.front() == '/' || base.empty()) return rel;
  return base.back() == '/' ? base + rel : base + "/" + rel;
}

std::vector<std::string> split_words(const std::string& line) {
  std::vector<std::string> words;
  std::string current;
  for (char c : line) {
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!current.empty()) words.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

std::optional<int> parse_int(const std::string& word) {
  if (word.empty() || word.size() > 9 ||
      !std::all_of(word.begin(), word.end(),
                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return std::nullopt;
  return std::stoi(word);
}

std::optional<Value> parse_case_value(const std::string& word, const Domain& dom) {
  if (word == "bot") return dom.has_bottom() ? std::optional(Value::bottom()) : std::nullopt;
  std::optional<int> n = parse_int(word);
  if (!n || !dom.contains(Value::of(*n))) return std::nullopt;
  return Value::of(*n);
}

// The case list arrives as one raw string; give the punctuation breathing
// room so braces and semicolons need no surrounding spaces in the file.
std::vector<std::string> split_case_words(const std::string& raw) {
  std::string padded;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    char c = raw[i];
    if (c == '{' || c == '}' || c == ';') {
      padded += ' ';
      padded += c;
      padded += ' ';
    } else if (c == '-' && i + 1 < raw.size() && raw[i + 1] == '>') {
      padded += " -> ";
      ++i;
    } else {
      padded += c;
    }
  }
  return split_words(padded);
}

struct SemanticsDecl {
  int line = 0;
  std::string raw;  // everything after the keyword, unsplit
};

}  // namespace

LoadedSemantics parse_semantics_file(const std::string& text, const std::string& base_dir) {
  std::optional<Domain> declared_domain;
  std::optional<std::pair<int, std::string>> interp_decl;          // line, path
  std::vector<std::pair<int, std::pair<std::string, std::string>>> graph_decls;
  std::optional<SemanticsDecl> semantics_decl;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::vector<std::string> words = split_words(raw);
    if (words.empty()) continue;
    const std::string& head = words[0];
    if (head == "domain") {
      if (declared_domain) throw ParseError(line_no, 1, "domain was already declared");
      bool with_bottom = false;
      std::size_t n = words.size();
      if (n >= 3 && words[n - 2] == "with" && words[n - 1] == "bottom") {
        with_bottom = true;
        n -= 2;
      }
      if (n == 2 && words[1] == "bool") {
        declared_domain = Domain::boolean(with_bottom);
      } else if (n == 3 && words[1] == "mod") {
        std::optional<int> m = parse_int(words[2]);
        if (!m || *m < 2) throw ParseError(line_no, 1, "modulus must be at least 2");
        declared_domain = Domain::modular(*m, with_bottom);
      } else {
        throw ParseError(line_no, 1, "malformed domain declaration");
      }
    } else if (head == "interp") {
      if (interp_decl) throw ParseError(line_no, 1, "interp was already declared");
      if (words.size() != 2) throw ParseError(line_no, 1, "usage: interp <path>");
      interp_decl = {line_no, words[1]};
    } else if (head == "graph") {
      if (words.size() != 3) throw ParseError(line_no, 1, "usage: graph <name> <path>");
      graph_decls.push_back({line_no, {words[1], words[2]}});
    } else if (head == "semantics") {
      if (semantics_decl) throw ParseError(line_no, 1, "semantics was already declared");
      std::string rest = raw.substr(raw.find("semantics") + 9);
      if (auto hash = rest.find('#'); hash != std::string::npos) rest.resize(hash);
      semantics_decl = SemanticsDecl{line_no, rest};
    } else {
      throw ParseError(line_no, 1, "expected 'domain', 'interp', 'graph' or 'semantics'");
    }
  }

  if (!interp_decl) throw ParseError(line_no ? line_no : 1, 1, "missing 'interp' declaration");
  if (!semantics_decl)
    throw ParseError(line_no ? line_no : 1, 1, "missing 'semantics' declaration");

  Workspace ws;
  const std::string interp_path = join_path(base_dir, interp_decl->second);
  Interpretation interp = parse_interpretation(read_file(interp_path));
  if (declared_domain && !(interp.domain() == *declared_domain))
    throw ParseError(interp_decl->first, 1,
                     "declared domain " + declared_domain->str() +
                         " does not match the interpretation's " + interp.domain().str());
  ws.add_interpretation("interp", interp);

  for (const auto& [gline, decl] : graph_decls) {
    const auto& [name, rel_path] = decl;
    ProvenanceGraph g;
    try {
      g = parse_graph(read_file(join_path(base_dir, rel_path)));
    } catch (const Error& e) {
      throw ParseError(gline, 1, "graph '" + name + "': " + e.what());
    }
    ValidationReport report = validate(g, interp);
    if (!report.all_pass())
      throw ParseError(gline, 1,
                       "graph '" + name + "' does not validate: " +
                           (report.diagnostics.empty() ? "structural check failed"
                                                       : report.diagnostics.front()));
    try {
      ws.add_graph(name, std::move(g));
    } catch (const Error& e) {
      throw ParseError(gline, 1, e.what());
    }
  }

  const SemanticsDecl& decl = *semantics_decl;
  auto fail = [&](const std::string& msg) -> ParseError {
    return ParseError(decl.line, 1, msg);
  };
  std::vector<std::string> words = split_case_words(decl.raw);
  if (words.empty()) throw fail("missing semantics kind");
  const std::string& kind = words[0];

  try {
    if (kind == "constant-graph") {
      if (words.size() != 1) throw fail("usage: semantics constant-graph");
      std::vector<std::string> names = ws.graph_names();
      if (names.size() != 1)
        throw fail("constant-graph needs exactly one declared graph, have " +
                   std::to_string(names.size()));
      return {ws, ProvenanceSemantics::constant(ws.graph(names[0]), interp)};
    }
    if (kind == "fixed-graph") {
      if (words.size() != 2) throw fail("usage: semantics fixed-graph <name>");
      return {ws, ProvenanceSemantics::fixed(ws.graph(words[1]), interp)};
    }
    if (kind == "case-split") {
      if (words.size() < 4 || words[2] != "{" || words.back() != "}")
        throw fail("usage: semantics case-split <input> { <value> -> <name> ; ... }");
      const std::string& split_var = words[1];
      std::map<Value, ProvenanceGraph> cases;
      std::size_t i = 3;
      const std::size_t end = words.size() - 1;  // index of '}'
      while (i < end) {
        if (i + 2 >= end || words[i + 1] != "->")
          throw fail("expected '<value> -> <name>' in the case list");
        std::optional<Value> v = parse_case_value(words[i], interp.domain());
        if (!v) throw fail("bad case value '" + words[i] + "'");
        if (cases.count(*v)) throw fail("duplicate case for value " + v->str());
        cases.emplace(*v, ws.graph(words[i + 2]));
        i += 3;
        if (i < end) {
          if (words[i] != ";") throw fail("expected ';' between cases");
          ++i;
        }
      }
      if (cases.empty()) throw fail("case-split needs at least one case");
      const std::vector<std::string>& inputs = cases.begin()->second.inputs;
      auto pos = std::find(inputs.begin(), inputs.end(), split_var);
      if (pos == inputs.end())
        throw fail("split variable '" + split_var +
                   "' is not a designated input of the case graphs");
      return {ws, ProvenanceSemantics::case_split(
                      static_cast<int>(pos - inputs.begin()), std::move(cases), interp)};
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw fail(e.what());
  }
  throw fail("unknown semantics kind '" + kind +
             "' (want constant-graph, fixed-graph or case-split)");
}

LoadedSemantics load_semantics_file(const std::string& path) {
  std::string base_dir;
  if (auto slash = path.find_last_of('/'); slash != std::string::npos)
    base_dir = path.substr(0, slash);
  return parse_semantics_file(read_file(path), base_dir);
}

}  // namespace causeway
