#include "causeway/cli.hpp"

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "causeway/approximation.hpp"
#include "causeway/audit.hpp"
#include "causeway/cause.hpp"
#include "causeway/dot.hpp"
#include "causeway/error.hpp"
#include "causeway/facts.hpp"
#include "causeway/graph_json.hpp"
#include "causeway/text_format.hpp"
#include "causeway/workspace.hpp"

namespace causeway {

namespace {

using nlohmann::ordered_json;

std::string ext_of(const std::string& path) {
  auto slash = path.find_last_of('/');
  auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return "";
  return path.substr(dot + 1);
}

CausalModel load_model(const std::string& path) { return parse_model(read_file(path)); }
ProvenanceGraph load_graph(const std::string& path) { return parse_graph(read_file(path)); }
Interpretation load_interp(const std::string& path) {
  return parse_interpretation(read_file(path));
}

// k=v[,k=v...] lists, order preserved.
std::vector<std::pair<std::string, Value>> parse_assignments(
    const std::vector<std::string>& specs, const Domain& dom, const char* what) {
  std::vector<std::pair<std::string, Value>> out;
  for (const std::string& spec : specs) {
    std::size_t start = 0;
    while (start <= spec.size()) {
      std::size_t comma = spec.find(',', start);
      std::string item = spec.substr(start, comma == std::string::npos ? comma : comma - start);
      start = comma == std::string::npos ? spec.size() + 1 : comma + 1;
      if (item.empty()) continue;
      std::size_t eq = item.find('=');
      if (eq == std::string::npos || eq == 0)
        throw Error(std::string(what) + " entries look like name=value; got '" + item + "'");
      std::string name = item.substr(0, eq);
      std::string vtext = item.substr(eq + 1);
      Value v;
      if (vtext == "bot") {
        if (!dom.has_bottom())
          throw Error("'bot' needs a domain declared with bottom; domain is " + dom.str());
        v = Value::bottom();
      } else {
        try {
          std::size_t used = 0;
          int n = std::stoi(vtext, &used);
          if (used != vtext.size() || n < 0) throw std::invalid_argument("");
          v = Value::of(n);
        } catch (const std::exception&) {
          throw Error(std::string(what) + ": bad value '" + vtext + "' for '" + name + "'");
        }
        if (!dom.contains(v))
          throw Error(std::string(what) + ": value " + v.str() + " outside domain " +
                      dom.str());
      }
      out.emplace_back(std::move(name), v);
    }
  }
  return out;
}

Valuation to_valuation(const std::vector<std::pair<std::string, Value>>& pairs) {
  Valuation out;
  for (const auto& [name, v] : pairs) out.set(name, v);
  return out;
}

ordered_json value_json(Value v) {
  if (v.is_bottom()) return "bot";
  return v.ordinary();
}

ordered_json valuation_json(const Valuation& val) {
  ordered_json out = ordered_json::object();
  for (const auto& [name, v] : val.entries()) out[name] = value_json(v);
  return out;
}

void emit_json(const ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

void print_valuation(const Valuation& val) {
  for (const auto& [name, v] : val.entries()) std::cout << name << " = " << v.str() << "\n";
}

// ---------------------------------------------------------------------------
// shared option bundles
// ---------------------------------------------------------------------------

struct CommonArgs {
  std::string path;
  std::vector<std::string> exo;
  std::vector<std::string> set;
  std::string effect;
  std::string interp_path;
  std::string target;
  std::string grade;
  std::string result_var;
  int max_size = 0;  // 0 = unset
  int max_tau = -1;
  bool causal = false;
  bool json = false;
};

int resolved_max_size(const CommonArgs& a) {
  return a.max_size > 0 ? a.max_size : default_max_cause_size();
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

int cmd_eval(const CommonArgs& a, bool with_set) {
  CausalModel m = load_model(a.path);
  auto sets = parse_assignments(a.set, m.domain(), "--set");
  if (with_set) m = m.intervene(sets);
  Valuation exo = to_valuation(parse_assignments(a.exo, m.domain(), "--exo"));
  Valuation out = m.evaluate(exo);
  if (a.json) {
    emit_json(ordered_json{{"values", valuation_json(out)}});
  } else {
    print_valuation(out);
  }
  return 0;
}

CausalSituation load_situation(const CommonArgs& a) {
  std::string ext = ext_of(a.path);
  if (ext == "model") {
    CausalModel m = load_model(a.path);
    Valuation exo = to_valuation(parse_assignments(a.exo, m.domain(), "--exo"));
    return CausalSituation::from_exogenous(m, exo);
  }
  if (ext == "json") {
    if (a.interp_path.empty())
      throw Error("a provenance graph needs --interp <file> to become a causal situation");
    ProvenanceGraph g = load_graph(a.path);
    Interpretation interp = load_interp(a.interp_path);
    return compile_graph(g, interp, /*proxy_inputs=*/true).situation();
  }
  throw Error("expected a .model or .json input, got '" + a.path + "'");
}

int cmd_cause(const CommonArgs& a) {
  CausalSituation sit = load_situation(a);
  auto effects = parse_assignments({a.effect}, sit.model().domain(), "--effect");
  if (effects.size() != 1) throw Error("--effect takes exactly one name=value pair");
  const auto& [effect, value] = effects[0];
  int max_size = resolved_max_size(a);
  std::vector<WitnessedCause> causes = actual_causes(sit, effect, value, max_size);

  if (a.json) {
    ordered_json list = ordered_json::array();
    for (const WitnessedCause& w : causes) {
      ordered_json cause = ordered_json::object();
      ordered_json counterfactual = ordered_json::object();
      for (std::size_t i = 0; i < w.query.cause.size(); ++i) {
        cause[w.query.cause[i].first] = value_json(w.query.cause[i].second);
        counterfactual[w.query.cause[i].first] = value_json(w.counterfactual_values[i]);
      }
      ordered_json contingency = ordered_json::object();
      for (std::size_t i = 0; i < w.contingency.size(); ++i)
        contingency[w.contingency[i]] = value_json(w.contingency_values[i]);
      list.push_back({{"cause", cause},
                      {"contingency", contingency},
                      {"counterfactual", counterfactual}});
    }
    emit_json(ordered_json{{"effect", effect},
                           {"effect_value", value_json(value)},
                           {"max_size", max_size},
                           {"causes", list}});
    return 0;
  }

  std::cout << "actual causes of " << effect << "=" << value.str() << " (size bound "
            << max_size << "):\n";
  if (causes.empty()) {
    std::cout << "  (none)\n";
  } else {
    for (const WitnessedCause& w : causes) std::cout << "  " << w.str() << "\n";
  }
  return 0;
}

int cmd_infer(const CommonArgs& a) {
  ProvenanceGraph g = load_graph(a.path);
  FactBase closure = datalog_closure(base_facts(g));
  if (a.json) {
    ordered_json list = ordered_json::array();
    for (const EdgeFact& f : closure.facts()) {
      ordered_json entry{{"relation", relation_name(f.relation)},
                         {"subject", f.subject},
                         {"object", f.object}};
      if (const RuleInstance* how = closure.derivation_of(f)) {
        ordered_json premises = ordered_json::array();
        for (const EdgeFact& p : how->premises)
          premises.push_back({{"relation", relation_name(p.relation)},
                              {"subject", p.subject},
                              {"object", p.object}});
        entry["derived_by"] = ordered_json{{"rule", how->rule}, {"premises", premises}};
      } else {
        entry["derived_by"] = nullptr;
      }
      list.push_back(std::move(entry));
    }
    emit_json(ordered_json{{"facts", list}});
  } else {
    std::cout << closure.dump();
  }
  return 0;
}

int cmd_audit(const CommonArgs& a) {
  ProvenanceGraph g = load_graph(a.path);
  if (a.interp_path.empty()) throw Error("audit needs --interp <file>");
  Interpretation interp = load_interp(a.interp_path);
  AuditReport report = audit(g, interp, resolved_max_size(a));
  if (a.json) {
    std::cout << report.json();
  } else {
    std::cout << report.str();
  }
  return report.is_sound() && report.is_complete() ? 0 : 1;
}

int cmd_validate(const CommonArgs& a) {
  ProvenanceGraph g = load_graph(a.path);
  ValidationReport report;
  if (a.interp_path.empty()) {
    report = validate_structure(g);
  } else {
    report = validate(g, load_interp(a.interp_path));
  }
  bool ok = report.is_bipartite && report.is_acyclic && report.is_functional &&
            report.is_sorted.value_or(true);
  if (a.json) {
    ordered_json doc{{"bipartite", report.is_bipartite},
                     {"acyclic", report.is_acyclic},
                     {"functional", report.is_functional},
                     {"sorted", report.is_sorted ? ordered_json(*report.is_sorted)
                                                 : ordered_json(nullptr)},
                     {"diagnostics", report.diagnostics},
                     {"pass", ok}};
    emit_json(doc);
  } else {
    std::cout << report.str();
  }
  return ok ? 0 : 1;
}

BlackBoxFunction load_functional_target(const CommonArgs& a, const LoadedSemantics& ls) {
  std::string ext = ext_of(a.target);
  if (ext == "model") {
    CausalModel m = load_model(a.target);
    std::string result = a.result_var.empty() ? default_result_variable(m) : a.result_var;
    return BlackBoxFunction::from_model(m, result);
  }
  if (ext == "interp") {
    Interpretation interp = load_interp(a.target);
    if (interp.functions().size() != 1)
      throw Error("a function target must declare exactly one function, '" + a.target +
                  "' has " + std::to_string(interp.functions().size()));
    const auto& [name, fn] = *interp.functions().begin();
    return BlackBoxFunction::from_expression(interp.domain(), fn.params, fn.body, name);
  }
  if (ext == "json")
    return BlackBoxFunction::from_graph(load_graph(a.target),
                                        ls.workspace.interpretation("interp"));
  throw Error("--target takes a .model, .interp or .json file");
}

CausalFunction load_causal_target(const CommonArgs& a, const LoadedSemantics& ls) {
  std::string ext = ext_of(a.target);
  if (ext == "model") return CausalFunction(load_model(a.target));
  if (ext == "json")
    return CausalFunction(graph_model(load_graph(a.target),
                                      ls.workspace.interpretation("interp"),
                                      /*proxy_inputs=*/false));
  throw Error("causal mode takes a .model or .json target");
}

ordered_json tuple_json(const std::vector<Value>& tuple) {
  ordered_json out = ordered_json::array();
  for (Value v : tuple) out.push_back(value_json(v));
  return out;
}

int cmd_power(const CommonArgs& a) {
  LoadedSemantics ls = load_semantics_file(a.path);
  PredictivePowerRelation rel =
      a.causal ? predictive_power(CausalSemantics::of_graph_semantics(ls.semantics),
                                  load_causal_target(a, ls), a.max_tau)
               : predictive_power(ls.semantics, load_functional_target(a, ls));
  if (a.json) {
    ordered_json pairs = ordered_json::array();
    const InputSpace& space = rel.space();
    for (std::uint64_t i = 0; i < space.size(); ++i)
      for (std::uint64_t j = 0; j < space.size(); ++j)
        if (rel.related(i, j))
          pairs.push_back(ordered_json::array(
              {tuple_json(space.tuple_at(i)), tuple_json(space.tuple_at(j))}));
    emit_json(ordered_json{{"mode", a.causal ? "causal" : "functional"},
                           {"reflexive", rel.is_reflexive()},
                           {"total", rel.is_total()},
                           {"related_pairs", rel.pair_count()},
                           {"density", rel.density()},
                           {"pairs", pairs}});
  } else {
    std::cout << rel.stats() << rel.dump();
  }
  return 0;
}

int cmd_check(const CommonArgs& a) {
  LoadedSemantics ls = load_semantics_file(a.path);
  CheckResult result;
  if (a.causal) {
    CausalSemantics sem = CausalSemantics::of_graph_semantics(ls.semantics);
    CausalFunction target = load_causal_target(a, ls);
    if (a.grade == "pointwise")
      result = is_pointwise_approx(sem, target);
    else if (a.grade == "local")
      result = is_local_approx(sem, target, a.max_tau);
    else
      result = is_global_approx(sem, target, a.max_tau);
  } else {
    BlackBoxFunction target = load_functional_target(a, ls);
    if (a.grade == "pointwise")
      result = is_pointwise_approx(ls.semantics, target);
    else
      result = is_global_approx(ls.semantics, target);
  }
  const char* mode = a.causal ? "causal" : "functional";
  if (a.json) {
    ordered_json doc{{"grade", a.grade}, {"mode", mode}, {"holds", result.holds}};
    if (result.counterexample) {
      const Mismatch& m = *result.counterexample;
      ordered_json ce{{"u", tuple_json(m.u)}};
      ce["u_prime"] = m.u_prime ? tuple_json(*m.u_prime) : ordered_json(nullptr);
      ce["tau"] = m.tau ? ordered_json(*m.tau) : ordered_json(nullptr);
      ce["at"] = m.at;
      ce["expected"] = value_json(m.expected);
      ce["got"] = value_json(m.got);
      doc["counterexample"] = ce;
    } else {
      doc["counterexample"] = nullptr;
    }
    emit_json(doc);
  } else {
    std::cout << a.grade << " approximation (" << mode << "): " << result.str() << "\n";
  }
  return result.holds ? 0 : 1;
}

int cmd_export_dot(const CommonArgs& a) {
  std::string ext = ext_of(a.path);
  if (ext == "json") {
    std::cout << graph_to_dot(load_graph(a.path));
  } else if (ext == "model") {
    std::cout << model_to_dot(load_model(a.path));
  } else {
    throw Error("export-dot takes a .json graph or a .model file");
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"provenance graphs as causal models: evaluation, actual causes,"
               " inference-rule audits, approximation grades"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "accepted and ignored; every analysis is deterministic");

  CommonArgs eval_a, intervene_a, cause_a, infer_a, audit_a, validate_a, power_a, check_a,
      dot_a;

  auto add_json = [](CLI::App* cmd, CommonArgs& a) {
    cmd->add_flag("--json", a.json, "machine-readable output");
  };

  CLI::App* eval = app.add_subcommand("eval", "solve a model for an exogenous assignment");
  eval->add_option("model", eval_a.path, "model file")->required();
  eval->add_option("--exo", eval_a.exo, "exogenous values, name=value[,name=value...]");
  add_json(eval, eval_a);

  CLI::App* intervene =
      app.add_subcommand("intervene", "evaluate after forcing endogenous variables");
  intervene->add_option("model", intervene_a.path, "model file")->required();
  intervene->add_option("--set", intervene_a.set, "interventions, name=value[,...]")
      ->required();
  intervene->add_option("--exo", intervene_a.exo, "exogenous values");
  add_json(intervene, intervene_a);

  CLI::App* cause = app.add_subcommand("cause", "search for actual causes of an effect");
  cause->add_option("input", cause_a.path, "model or graph file")->required();
  cause->add_option("--effect", cause_a.effect, "effect, name=value")->required();
  cause->add_option("--exo", cause_a.exo, "exogenous values (model inputs)");
  cause->add_option("--interp", cause_a.interp_path, "interpretation (graph inputs)");
  cause->add_option("--max-size", cause_a.max_size, "largest candidate set to try");
  add_json(cause, cause_a);

  CLI::App* infer = app.add_subcommand("infer", "run the edge-inference rules to fixpoint");
  infer->add_option("graph", infer_a.path, "graph file")->required();
  add_json(infer, infer_a);

  CLI::App* audit_cmd =
      app.add_subcommand("audit", "compare inferred edges against causal semantics");
  audit_cmd->add_option("graph", audit_a.path, "graph file")->required();
  audit_cmd->add_option("--interp", audit_a.interp_path, "interpretation file")->required();
  audit_cmd->add_option("--max-size", audit_a.max_size, "cause search bound");
  add_json(audit_cmd, audit_a);

  CLI::App* validate_cmd = app.add_subcommand("validate", "structural health of a graph");
  validate_cmd->add_option("graph", validate_a.path, "graph file")->required();
  validate_cmd->add_option("--interp", validate_a.interp_path,
                           "interpretation (enables the sortedness check)");
  add_json(validate_cmd, validate_a);

  CLI::App* power = app.add_subcommand("power", "predictive power relation of a semantics");
  power->add_option("semantics", power_a.path, "semantics definition file")->required();
  power->add_option("--target", power_a.target, "function to predict")->required();
  power->add_flag("--causal", power_a.causal, "compare causal functions under interventions");
  power->add_option("--result", power_a.result_var, "result variable of a model target");
  power->add_option("--max-tau", power_a.max_tau, "intervention size cap (causal mode)");
  add_json(power, power_a);

  CLI::App* check = app.add_subcommand("check", "grade a semantics against a target");
  check->add_option("semantics", check_a.path, "semantics definition file")->required();
  check->add_option("--target", check_a.target, "function to approximate")->required();
  check->add_option("--grade", check_a.grade, "pointwise|local|global")
      ->required()
      ->check(CLI::IsMember({"pointwise", "local", "global"}));
  check->add_flag("--causal", check_a.causal, "compare causal functions under interventions");
  check->add_option("--result", check_a.result_var, "result variable of a model target");
  check->add_option("--max-tau", check_a.max_tau, "intervention size cap (causal mode)");
  add_json(check, check_a);

  CLI::App* dot = app.add_subcommand("export-dot", "graphviz rendering of a graph or model");
  dot->add_option("input", dot_a.path, "graph or model file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (eval->parsed()) return cmd_eval(eval_a, false);
    if (intervene->parsed()) return cmd_eval(intervene_a, true);
    if (cause->parsed()) return cmd_cause(cause_a);
    if (infer->parsed()) return cmd_infer(infer_a);
    if (audit_cmd->parsed()) return cmd_audit(audit_a);
    if (validate_cmd->parsed()) return cmd_validate(validate_a);
    if (power->parsed()) return cmd_power(power_a);
    if (check->parsed()) {
      if (check_a.grade == "local" && !check_a.causal) {
        std::cerr << "error: --grade local only exists in causal mode; add --causal\n";
        return 2;
      }
      return cmd_check(check_a);
    }
    if (dot->parsed()) return cmd_export_dot(dot_a);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace causeway
