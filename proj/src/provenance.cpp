#include "causeway/provenance.hpp"

#include <algorithm>
#include <cctype>
#include <queue>
#include <set>

#include "causeway/error.hpp"

namespace causeway {

// ---------------------------------------------------------------------------
// ProvenanceGraph
// ---------------------------------------------------------------------------

const ArtifactNode* ProvenanceGraph::find_artifact(const std::string& id) const {
  for (const ArtifactNode& a : artifacts)
    if (a.id == id) return &a;
  return nullptr;
}

const ProcessNode* ProvenanceGraph::find_process(const std::string& id) const {
  for (const ProcessNode& p : processes)
    if (p.id == id) return &p;
  return nullptr;
}

bool ProvenanceGraph::is_input(const std::string& id) const {
  return std::find(inputs.begin(), inputs.end(), id) != inputs.end();
}

std::vector<std::string> ProvenanceGraph::source_artifacts() const {
  std::vector<std::string> out;
  for (const ArtifactNode& a : artifacts)
    if (!generator_of(a.id)) out.push_back(a.id);
  return out;
}

std::vector<UsedEdge> ProvenanceGraph::used_by(const std::string& process) const {
  std::vector<UsedEdge> out;
  for (const UsedEdge& e : used)
    if (e.process == process) out.push_back(e);
  std::sort(out.begin(), out.end(), [](const UsedEdge& a, const UsedEdge& b) {
    return a.position < b.position;
  });
  return out;
}

std::vector<std::string> ProvenanceGraph::generated_by(const std::string& process) const {
  std::vector<std::string> out;
  for (const GeneratedEdge& e : generated)
    if (e.process == process) out.push_back(e.artifact);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::string> ProvenanceGraph::generator_of(const std::string& artifact) const {
  for (const GeneratedEdge& e : generated)
    if (e.artifact == artifact) return e.process;
  return std::nullopt;
}

void ProvenanceGraph::canonicalize() {
  std::sort(artifacts.begin(), artifacts.end(),
            [](const ArtifactNode& a, const ArtifactNode& b) { return a.id < b.id; });
  std::sort(processes.begin(), processes.end(),
            [](const ProcessNode& a, const ProcessNode& b) { return a.id < b.id; });
  std::sort(used.begin(), used.end());
  std::sort(generated.begin(), generated.end());
}

// ---------------------------------------------------------------------------
// Interpretation
// ---------------------------------------------------------------------------

Interpretation::Interpretation(Domain domain, std::map<std::string, Function> functions)
    : domain_(std::move(domain)), functions_(std::move(functions)) {
  for (const auto& [name, fn] : functions_) {
    std::set<std::string> params(fn.params.begin(), fn.params.end());
    if (params.size() != fn.params.size())
      throw Error("interpretation of '" + name + "' has duplicate parameters");
    for (const std::string& ref : fn.body.variables())
      if (!params.count(ref))
        throw Error("interpretation of '" + name + "' references unknown parameter '" + ref +
                    "'");
  }
}

std::optional<Value> Interpretation::constant_process_value(const std::string& name,
                                                            const Domain& dom) {
  constexpr std::string_view prefix = "const_";
  if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0)
    return std::nullopt;
  std::string_view rest(name.data() + prefix.size(), name.size() - prefix.size());
  if (rest == "bot")
    return dom.has_bottom() ? std::optional<Value>(Value::bottom()) : std::nullopt;
  int v = 0;
  for (char c : rest) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + (c - '0');
    if (v >= dom.modulus()) return std::nullopt;
  }
  return Value::of(v);
}

bool Interpretation::has(const std::string& name) const {
  return functions_.count(name) != 0 || constant_process_value(name, domain_).has_value();
}

int Interpretation::arity_of(const std::string& name) const {
  auto it = functions_.find(name);
  if (it != functions_.end()) return static_cast<int>(it->second.params.size());
  if (constant_process_value(name, domain_)) return 0;
  throw Error("no interpretation for process name '" + name + "'");
}

Value Interpretation::apply(const std::string& name, std::span<const Value> args) const {
  auto it = functions_.find(name);
  if (it == functions_.end()) {
    if (auto c = constant_process_value(name, domain_)) {
      if (!args.empty()) throw Error("constant process '" + name + "' applied to arguments");
      return *c;
    }
    throw Error("no interpretation for process name '" + name + "'");
  }
  const Function& fn = it->second;
  if (args.size() != fn.params.size())
    throw Error("process '" + name + "' has arity " + std::to_string(fn.params.size()) +
                ", applied to " + std::to_string(args.size()) + " arguments");
  return fn.body.eval(
      [&](const std::string& param) -> Value {
        for (std::size_t i = 0; i < fn.params.size(); ++i)
          if (fn.params[i] == param) return args[i];
        throw Error("unbound parameter '" + param + "'");
      },
      domain_);
}

// ---------------------------------------------------------------------------
// validation
// ---------------------------------------------------------------------------

namespace {

// Dependency order over node ids: a process follows the artifacts it uses, an
// artifact follows its generating process. Lexicographic tie-break. Returns
// nullopt when the graph is cyclic.
std::optional<std::vector<std::string>> dependency_order(const ProvenanceGraph& g) {
  std::map<std::string, std::vector<std::string>> dependents;
  std::map<std::string, int> pending;
  for (const ArtifactNode& a : g.artifacts) pending[a.id];
  for (const ProcessNode& p : g.processes) pending[p.id];

  auto add_edge = [&](const std::string& from, const std::string& to) {
    if (!pending.count(from) || !pending.count(to)) return;  // dangling; bipartite check reports it
    dependents[from].push_back(to);
    ++pending[to];
  };
  for (const UsedEdge& e : g.used) add_edge(e.artifact, e.process);
  for (const GeneratedEdge& e : g.generated) add_edge(e.process, e.artifact);

  std::priority_queue<std::string, std::vector<std::string>, std::greater<std::string>> ready;
  for (const auto& [id, n] : pending)
    if (n == 0) ready.push(id);

  std::vector<std::string> order;
  while (!ready.empty()) {
    std::string id = ready.top();
    ready.pop();
    order.push_back(id);
    for (const std::string& d : dependents[id])
      if (--pending[d] == 0) ready.push(d);
  }
  if (order.size() != pending.size()) return std::nullopt;
  return order;
}

ValidationReport validate_impl(const ProvenanceGraph& g, const Interpretation* interp) {
  ValidationReport r;
  std::set<std::string> artifact_ids, process_ids;
  for (const ArtifactNode& a : g.artifacts)
    if (!artifact_ids.insert(a.id).second)
      r.diagnostics.push_back("duplicate artifact id '" + a.id + "'");
  for (const ProcessNode& p : g.processes) {
    if (!process_ids.insert(p.id).second)
      r.diagnostics.push_back("duplicate process id '" + p.id + "'");
    if (artifact_ids.count(p.id))
      r.diagnostics.push_back("id '" + p.id + "' is both artifact and process");
  }

  for (const UsedEdge& e : g.used) {
    if (!process_ids.count(e.process)) {
      r.is_bipartite = false;
      r.diagnostics.push_back("used edge from unknown process '" + e.process + "'");
    }
    if (!artifact_ids.count(e.artifact)) {
      r.is_bipartite = false;
      r.diagnostics.push_back("used edge to unknown artifact '" + e.artifact + "'");
    }
  }
  for (const GeneratedEdge& e : g.generated) {
    if (!artifact_ids.count(e.artifact)) {
      r.is_bipartite = false;
      r.diagnostics.push_back("generated edge from unknown artifact '" + e.artifact + "'");
    }
    if (!process_ids.count(e.process)) {
      r.is_bipartite = false;
      r.diagnostics.push_back("generated edge to unknown process '" + e.process + "'");
    }
  }

  if (!dependency_order(g)) {
    r.is_acyclic = false;
    r.diagnostics.push_back("graph contains a cycle");
  }

  for (const ProcessNode& p : g.processes) {
    std::size_t n = g.generated_by(p.id).size();
    if (n != 1) {
      r.is_functional = false;
      r.diagnostics.push_back("process '" + p.id + "' generates " + std::to_string(n) +
                              " artifacts");
    }
  }

  for (const std::string& in : g.inputs) {
    if (!artifact_ids.count(in))
      r.diagnostics.push_back("designated input '" + in + "' is not an artifact");
    else if (g.generator_of(in))
      r.diagnostics.push_back("designated input '" + in + "' has a generating process");
  }
  if (!g.result.empty() && !artifact_ids.count(g.result))
    r.diagnostics.push_back("result node '" + g.result + "' is not an artifact");

  if (interp) {
    r.is_sorted = true;
    for (const ProcessNode& p : g.processes) {
      if (!interp->has(p.name)) {
        r.is_sorted = false;
        r.diagnostics.push_back("process '" + p.id + "' has uninterpreted name '" + p.name + "'");
        continue;
      }
      const int ar = interp->arity_of(p.name);
      std::vector<UsedEdge> uses = g.used_by(p.id);
      bool ok = static_cast<int>(uses.size()) == ar;
      std::set<int> positions;
      for (const UsedEdge& e : uses)
        if (e.position < 1 || e.position > ar || !positions.insert(e.position).second) ok = false;
      if (!ok) {
        r.is_sorted = false;
        r.diagnostics.push_back("process '" + p.id + "' (name '" + p.name + "', arity " +
                                std::to_string(ar) + ") has ill-positioned used edges");
      }
    }
    for (const ArtifactNode& a : g.artifacts)
      if (!interp->domain().contains(a.value)) {
        r.is_sorted = false;
        r.diagnostics.push_back("artifact '" + a.id + "' has value " + a.value.str() +
                                " outside domain " + interp->domain().str());
      }
  }

  std::sort(r.diagnostics.begin(), r.diagnostics.end());
  return r;
}

}  // namespace

std::string ValidationReport::str() const {
  auto flag = [](bool b) { return b ? "true" : "false"; };
  std::string s;
  s += std::string("bipartite:  ") + flag(is_bipartite) + "\n";
  s += std::string("acyclic:    ") + flag(is_acyclic) + "\n";
  s += std::string("functional: ") + flag(is_functional) + "\n";
  s += std::string("sorted:     ") + (is_sorted ? flag(*is_sorted) : "not checked") + "\n";
  for (const std::string& d : diagnostics) s += "  - " + d + "\n";
  return s;
}

ValidationReport validate(const ProvenanceGraph& g, const Interpretation& interp) {
  return validate_impl(g, &interp);
}

ValidationReport validate_structure(const ProvenanceGraph& g) {
  return validate_impl(g, nullptr);
}

// ---------------------------------------------------------------------------
// graph evaluation
// ---------------------------------------------------------------------------

namespace {

// Preconditions shared by evaluation and compilation: the graph validates
// against the interpretation, no artifact has two generators, and the
// designated inputs are distinct sources.
void require_valid(const ProvenanceGraph& g, const Interpretation& interp) {
  ValidationReport r = validate(g, interp);
  if (!r.all_pass()) {
    std::string why = r.diagnostics.empty() ? "validation failed" : r.diagnostics.front();
    throw Error("graph does not validate: " + why);
  }
  std::map<std::string, int> generators;
  for (const GeneratedEdge& e : g.generated)
    if (++generators[e.artifact] > 1)
      throw Error("artifact '" + e.artifact + "' is generated by more than one process");
  std::set<std::string> seen;
  for (const std::string& in : g.inputs) {
    if (!g.find_artifact(in)) throw Error("designated input '" + in + "' is not an artifact");
    if (g.generator_of(in))
      throw Error("designated input '" + in + "' has a generating process");
    if (!seen.insert(in).second) throw Error("duplicate designated input '" + in + "'");
  }
}

}  // namespace

GraphFunction::GraphFunction(ProvenanceGraph g, Interpretation interp)
    : graph_(std::move(g)), interp_(std::move(interp)) {
  require_valid(graph_, interp_);
  if (graph_.result.empty() || !graph_.find_artifact(graph_.result))
    throw Error("graph has no result artifact");
  order_ = *dependency_order(graph_);
}

std::map<std::string, Value> GraphFunction::node_values(std::span<const Value> inputs) const {
  if (inputs.size() != graph_.inputs.size())
    throw Error("graph of arity " + std::to_string(graph_.inputs.size()) + " applied to " +
                std::to_string(inputs.size()) + " inputs");
  for (Value v : inputs)
    if (!interp_.domain().contains(v))
      throw Error("input value " + v.str() + " not in domain " + interp_.domain().str());

  std::map<std::string, Value> val;
  for (std::size_t i = 0; i < graph_.inputs.size(); ++i) val[graph_.inputs[i]] = inputs[i];

  for (const std::string& id : order_) {
    if (val.count(id)) continue;  // designated inputs are pre-filled
    if (const ProcessNode* p = graph_.find_process(id)) {
      std::vector<Value> args;
      for (const UsedEdge& e : graph_.used_by(id)) args.push_back(val.at(e.artifact));
      val[id] = interp_.apply(p->name, args);
    } else if (auto gen = graph_.generator_of(id)) {
      val[id] = val.at(*gen);
    } else {
      val[id] = graph_.find_artifact(id)->value;  // non-input source keeps its label
    }
  }
  return val;
}

Value GraphFunction::operator()(std::span<const Value> inputs) const {
  return node_values(inputs).at(graph_.result);
}

Value interpret_graph(const ProvenanceGraph& g, const Interpretation& interp,
                      std::span<const Value> inputs) {
  return GraphFunction(g, interp)(inputs);
}

// ---------------------------------------------------------------------------
// compilation to a structural model
// ---------------------------------------------------------------------------

namespace {

Expression rename_params(const Expression& e, const std::map<std::string, std::string>& to) {
  switch (e.kind()) {
    case Expression::Kind::Variable:
      return Expression::variable(to.at(e.variable_name()));
    case Expression::Kind::Constant:
      return e;
    case Expression::Kind::Apply: {
      std::vector<Expression> args;
      for (const Expression& a : e.args()) args.push_back(rename_params(a, to));
      return Expression::apply(e.op(), std::move(args));
    }
    case Expression::Kind::Table: {
      std::vector<Expression> args;
      for (const Expression& a : e.args()) args.push_back(rename_params(a, to));
      return Expression::table(e.lookup_ptr(), std::move(args));
    }
  }
  throw Error("unhandled expression kind");
}

std::string fresh_exo_name(const ProvenanceGraph& g, const std::string& id) {
  std::string name = id + "$u";
  while (g.find_artifact(name) || g.find_process(name)) name += "$";
  return name;
}

// Shared by compile_graph and graph_model. Fills meta (variable groups and
// proxy names) when given.
CausalModel build_model(const ProvenanceGraph& g, const Interpretation& interp,
                        bool proxy_inputs, CompiledGraph* meta) {
  const Domain& dom = interp.domain();
  std::vector<std::string> exo;
  std::vector<std::pair<std::string, Expression>> mechs;

  for (const ArtifactNode& a : g.artifacts) {
    if (meta) meta->artifact_vars.push_back(a.id);
    auto gen = g.generator_of(a.id);
    if (gen) {
      mechs.emplace_back(a.id, Expression::variable(*gen));
    } else if (proxy_inputs) {
      std::string u = fresh_exo_name(g, a.id);
      if (meta) meta->proxy_exo[a.id] = u;
      exo.push_back(u);
      mechs.emplace_back(a.id, Expression::variable(u));
    } else {
      exo.push_back(a.id);
    }
  }
  for (const ProcessNode& p : g.processes) {
    if (meta) meta->process_vars.push_back(p.id);
    auto fn = interp.functions().find(p.name);
    if (fn == interp.functions().end()) {
      auto c = Interpretation::constant_process_value(p.name, dom);
      if (!c) throw Error("no interpretation for process name '" + p.name + "'");
      mechs.emplace_back(p.id, Expression::constant(*c));
    } else {
      std::map<std::string, std::string> rename;
      std::vector<UsedEdge> uses = g.used_by(p.id);
      for (std::size_t i = 0; i < uses.size(); ++i)
        rename[fn->second.params[i]] = uses[i].artifact;
      mechs.emplace_back(p.id, rename_params(fn->second.body, rename));
    }
  }
  if (meta) {
    std::sort(meta->artifact_vars.begin(), meta->artifact_vars.end());
    std::sort(meta->process_vars.begin(), meta->process_vars.end());
  }
  return CausalModel(dom, std::move(exo), std::move(mechs));
}

}  // namespace

CompiledGraph compile_graph(const ProvenanceGraph& g, const Interpretation& interp,
                            bool proxy_inputs) {
  require_valid(g, interp);

  CompiledGraph out{CausalModel(interp.domain(), {}, {}), Valuation{}, {}, {}, {}, proxy_inputs};
  out.model = build_model(g, interp, proxy_inputs, &out);

  // sigma: stored labels on artifacts (and on the proxy exogenous variables),
  // one-step recomputation on processes.
  std::map<std::string, Value> stored;
  for (const ArtifactNode& a : g.artifacts) {
    stored[a.id] = a.value;
    out.sigma.set(a.id, a.value);
  }
  for (const ProcessNode& p : g.processes) {
    std::vector<Value> args;
    for (const UsedEdge& e : g.used_by(p.id)) args.push_back(stored.at(e.artifact));
    out.sigma.set(p.id, interp.apply(p.name, args));
  }
  for (const auto& [id, u] : out.proxy_exo) out.sigma.set(u, stored.at(id));

  // Labels must agree with a one-step recomputation; report the first
  // offender in dependency order.
  for (const std::string& id : *dependency_order(g)) {
    auto gen = g.generator_of(id);
    if (!gen) continue;
    Value expect = out.sigma.at(*gen);
    if (stored.at(id) != expect)
      throw Error("stored labels are inconsistent at node '" + id + "': label " +
                  stored.at(id).str() + ", recomputed " + expect.str());
  }
  return out;
}

CausalModel graph_model(const ProvenanceGraph& g, const Interpretation& interp,
                        bool proxy_inputs) {
  require_valid(g, interp);
  return build_model(g, interp, proxy_inputs, nullptr);
}

CausalSituation to_causal_situation(const ProvenanceGraph& g, const Interpretation& interp,
                                    bool proxy_inputs) {
  return compile_graph(g, interp, proxy_inputs).situation();
}

// ---------------------------------------------------------------------------
// term round-trip
// ---------------------------------------------------------------------------

namespace {

void term_of(const ProvenanceGraph& g, const std::string& artifact, std::string& out) {
  const ArtifactNode* a = g.find_artifact(artifact);
  out += a->id + ":" + a->value.str();
  auto gen = g.generator_of(artifact);
  if (!gen) return;
  const ProcessNode* p = g.find_process(*gen);
  out += "=" + p->id + ":" + p->name + "(";
  const std::vector<UsedEdge> uses = g.used_by(p->id);
  for (std::size_t i = 0; i < uses.size(); ++i) {
    if (i) out += ", ";
    term_of(g, uses[i].artifact, out);
  }
  out += ")";
}

struct TermParser {
  const std::string& text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(1, static_cast<int>(pos) + 1, msg);
  }
  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  char peek() const { return pos < text.size() ? text[pos] : '\0'; }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }
  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                 text[pos] == '_' || text[pos] == '$'))
      ++pos;
    if (pos == start) fail("expected an identifier");
    return text.substr(start, pos - start);
  }
  Value value() {
    std::string tok = ident();
    if (tok == "bot") return Value::bottom();
    for (char c : tok)
      if (!std::isdigit(static_cast<unsigned char>(c))) fail("expected a value");
    return Value::of(std::stoi(tok));
  }

  // artifact := id ':' value ['=' id ':' name '(' [artifact (',' artifact)*] ')']
  std::string artifact(ProvenanceGraph& g) {
    std::string id = ident();
    skip_ws();
    expect(':');
    Value v = value();
    g.artifacts.push_back({id, v});
    skip_ws();
    if (peek() == '=') {
      ++pos;
      std::string pid = ident();
      skip_ws();
      expect(':');
      std::string pname = ident();
      skip_ws();
      expect('(');
      g.processes.push_back({pid, pname});
      g.generated.push_back({id, pid});
      int position = 1;
      skip_ws();
      if (peek() != ')') {
        while (true) {
          std::string child = artifact(g);
          g.used.push_back({pid, child, position++});
          skip_ws();
          if (peek() != ',') break;
          ++pos;
        }
      }
      expect(')');
    }
    return id;
  }
};

}  // namespace

std::string graph_to_term(const ProvenanceGraph& g) {
  if (g.result.empty() || !g.find_artifact(g.result)) throw Error("graph has no result artifact");
  if (!dependency_order(g)) throw Error("graph contains a cycle");

  std::map<std::string, int> consumers;
  for (const UsedEdge& e : g.used) ++consumers[e.artifact];
  for (const auto& [id, n] : consumers)
    if (n > 1) throw Error("artifact '" + id + "' is shared; graph is not tree-shaped");
  for (const ProcessNode& p : g.processes)
    if (g.generated_by(p.id).size() != 1)
      throw Error("process '" + p.id + "' does not generate exactly one artifact");

  // every node must take part in the tree under the result
  std::set<std::string> reachable;
  std::vector<std::string> work{g.result};
  while (!work.empty()) {
    std::string id = work.back();
    work.pop_back();
    if (!reachable.insert(id).second) continue;
    if (auto gen = g.generator_of(id)) {
      work.push_back(*gen);
      for (const UsedEdge& e : g.used_by(*gen)) work.push_back(e.artifact);
    }
  }
  if (reachable.size() != g.artifacts.size() + g.processes.size())
    throw Error("graph has nodes outside the result tree; not tree-shaped");

  std::string out;
  term_of(g, g.result, out);
  return out;
}

ProvenanceGraph graph_from_term(const std::string& term) {
  ProvenanceGraph g;
  TermParser p{term};
  g.result = p.artifact(g);
  p.skip_ws();
  if (p.pos != term.size()) p.fail("trailing input after term");

  std::set<std::string> ids;
  for (const ArtifactNode& a : g.artifacts)
    if (!ids.insert(a.id).second) throw ParseError(1, 1, "duplicate node id '" + a.id + "'");
  for (const ProcessNode& pr : g.processes)
    if (!ids.insert(pr.id).second) throw ParseError(1, 1, "duplicate node id '" + pr.id + "'");

  for (const ArtifactNode& a : g.artifacts)
    if (!g.generator_of(a.id)) g.inputs.push_back(a.id);
  g.canonicalize();
  return g;
}

}  // namespace causeway
