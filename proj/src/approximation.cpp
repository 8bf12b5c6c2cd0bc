#include "causeway/approximation.hpp"

#include <algorithm>
#include <cmath>

#include "causeway/error.hpp"

namespace causeway {

// ---------------------------------------------------------------------------
// InputSpace
// ---------------------------------------------------------------------------

InputSpace::InputSpace(Domain domain, int arity) : domain_(std::move(domain)), arity_(arity) {
  if (arity < 0) throw Error("input space arity must be non-negative");
  size_ = 1;
  for (int i = 0; i < arity_; ++i) {
    if (size_ > (std::uint64_t{1} << 62) / domain_.size())
      throw Error("input space too large to enumerate");
    size_ *= domain_.size();
  }
}

std::vector<Value> InputSpace::tuple_at(std::uint64_t index) const {
  std::vector<Value> out(arity_);
  const auto& elems = domain_.elements();
  for (int i = arity_ - 1; i >= 0; --i) {
    out[i] = elems[index % elems.size()];
    index /= elems.size();
  }
  return out;
}

std::uint64_t InputSpace::index_of(std::span<const Value> tuple) const {
  std::uint64_t idx = 0;
  for (Value v : tuple) idx = idx * domain_.size() + domain_.ordinal(v);
  return idx;
}

std::string InputSpace::tuple_str(std::span<const Value> tuple) {
  std::string s = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) s += (i ? ", " : "") + tuple[i].str();
  return s + ")";
}

// ---------------------------------------------------------------------------
// BlackBoxFunction
// ---------------------------------------------------------------------------

BlackBoxFunction::BlackBoxFunction(InputSpace space,
                                   std::function<Value(std::span<const Value>)> fn,
                                   std::string label)
    : space_(std::move(space)), fn_(std::move(fn)), label_(std::move(label)) {}

std::string default_result_variable(const CausalModel& m) {
  if (m.endogenous().empty()) throw Error("model has no endogenous variables");
  return m.var_at(m.topo_order().back());
}

BlackBoxFunction BlackBoxFunction::from_model(const CausalModel& m, const std::string& result) {
  if (!m.is_endogenous(result))
    throw Error("result variable '" + result + "' is not endogenous");
  auto model = std::make_shared<CausalModel>(m);
  const int result_index = model->index_of(result);
  auto fn = [model, result_index](std::span<const Value> u) {
    std::vector<Value> state(model->num_vars());
    for (int i = 0; i < model->num_exogenous(); ++i) {
      if (!model->domain().contains(u[i]))
        throw Error("input value " + u[i].str() + " not in domain " + model->domain().str());
      state[i] = u[i];
    }
    model->eval_state(state);
    return state[result_index];
  };
  return BlackBoxFunction(InputSpace(m.domain(), m.num_exogenous()), std::move(fn),
                          "model result " + result);
}

BlackBoxFunction BlackBoxFunction::from_graph(ProvenanceGraph g, Interpretation interp) {
  InputSpace space(interp.domain(), static_cast<int>(g.inputs.size()));
  auto gf = std::make_shared<GraphFunction>(std::move(g), std::move(interp));
  auto fn = [gf](std::span<const Value> u) { return (*gf)(u); };
  return BlackBoxFunction(std::move(space), std::move(fn), "graph");
}

BlackBoxFunction BlackBoxFunction::from_expression(const Domain& dom,
                                                   std::vector<std::string> params,
                                                   Expression body, std::string label) {
  for (const std::string& ref : body.variables())
    if (std::find(params.begin(), params.end(), ref) == params.end())
      throw Error("expression references unknown parameter '" + ref + "'");
  InputSpace space(dom, static_cast<int>(params.size()));
  auto shared_params = std::make_shared<std::vector<std::string>>(std::move(params));
  auto shared_body = std::make_shared<Expression>(std::move(body));
  Domain d = dom;
  auto fn = [shared_params, shared_body, d](std::span<const Value> u) {
    return shared_body->eval(
        [&](const std::string& name) -> Value {
          for (std::size_t i = 0; i < shared_params->size(); ++i)
            if ((*shared_params)[i] == name) return u[i];
          throw Error("unbound parameter '" + name + "'");
        },
        d);
  };
  return BlackBoxFunction(std::move(space), std::move(fn), std::move(label));
}

// ---------------------------------------------------------------------------
// CausalFunction
// ---------------------------------------------------------------------------

CausalFunction::CausalFunction(CausalModel m)
    : model_(std::make_shared<const CausalModel>(std::move(m))) {}

void CausalFunction::apply(std::span<const std::pair<int, Value>> tau,
                           std::span<const Value> u, std::span<Value> out) const {
  const CausalModel& m = *model_;
  std::vector<Value> state(m.num_vars());
  std::vector<char> pinned;
  for (int i = 0; i < m.num_exogenous(); ++i) state[i] = u[i];
  if (!tau.empty()) {
    pinned.assign(m.num_vars(), 0);
    for (const auto& [vi, val] : tau) {
      state[m.num_exogenous() + vi] = val;
      pinned[m.num_exogenous() + vi] = 1;
    }
  }
  m.eval_state(state, pinned);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = state[m.num_exogenous() + i];
}

Valuation CausalFunction::apply(const Valuation& tau, const Valuation& u) const {
  const CausalModel& m = *model_;
  std::vector<std::pair<int, Value>> tau_ix;
  for (const auto& [name, v] : tau.entries()) {
    if (!m.is_endogenous(name))
      throw Error("intervention variable '" + name + "' is not endogenous");
    if (!m.domain().contains(v))
      throw Error("intervention value " + v.str() + " not in domain " + m.domain().str());
    tau_ix.emplace_back(m.index_of(name) - m.num_exogenous(), v);
  }
  std::vector<Value> u_tuple(inputs().size());
  for (std::size_t i = 0; i < inputs().size(); ++i) {
    auto v = u.get(inputs()[i]);
    if (!v) throw Error("input valuation misses '" + inputs()[i] + "'");
    u_tuple[i] = *v;
  }
  std::vector<Value> out(variables().size());
  apply(tau_ix, u_tuple, out);
  Valuation result;
  for (std::size_t i = 0; i < variables().size(); ++i) result.set(variables()[i], out[i]);
  return result;
}

bool CausalFunction::same_signature(const CausalFunction& other) const {
  return inputs() == other.inputs() && variables() == other.variables() &&
         domain() == other.domain();
}

// ---------------------------------------------------------------------------
// ProvenanceSemantics
// ---------------------------------------------------------------------------

namespace {

void require_usable(const ProvenanceGraph& g, const Interpretation& interp) {
  ValidationReport r = validate(g, interp);
  if (!r.all_pass())
    throw Error("semantics graph does not validate: " +
                (r.diagnostics.empty() ? "validation failed" : r.diagnostics.front()));
  if (g.result.empty() || !g.find_artifact(g.result))
    throw Error("semantics graph has no result artifact");
}

// The trivial graph for one input: the reference's nodes with every process
// replaced by the constant it computed and all used edges dropped.
ProvenanceGraph constant_graph_at(const ProvenanceGraph& ref, const Interpretation& interp,
                                  std::span<const Value> u) {
  const GraphFunction gf(ref, interp);
  const std::map<std::string, Value> vals = gf.node_values(u);

  ProvenanceGraph out;
  for (const ArtifactNode& a : ref.artifacts) out.artifacts.push_back({a.id, vals.at(a.id)});
  for (const ProcessNode& p : ref.processes)
    out.processes.push_back({p.id, "const_" + vals.at(p.id).str()});
  out.generated = ref.generated;
  out.inputs = ref.inputs;
  out.result = ref.result;
  out.canonicalize();
  return out;
}

}  // namespace

ProvenanceSemantics::ProvenanceSemantics(Kind kind, Interpretation interp)
    : kind_(kind), interp_(std::move(interp)) {}

ProvenanceSemantics ProvenanceSemantics::constant(ProvenanceGraph reference,
                                                  Interpretation interp) {
  require_usable(reference, interp);
  ProvenanceSemantics sem(Kind::Constant, std::move(interp));
  sem.inputs_ = reference.inputs;
  sem.cases_.emplace_back(Value::of(0), std::move(reference));
  return sem;
}

ProvenanceSemantics ProvenanceSemantics::fixed(ProvenanceGraph g, Interpretation interp) {
  require_usable(g, interp);
  ProvenanceSemantics sem(Kind::Fixed, std::move(interp));
  sem.inputs_ = g.inputs;
  sem.cases_.emplace_back(Value::of(0), std::move(g));
  return sem;
}

ProvenanceSemantics ProvenanceSemantics::case_split(int split_input,
                                                    std::map<Value, ProvenanceGraph> cases,
                                                    Interpretation interp) {
  if (cases.empty()) throw Error("case split needs at least one case");
  for (Value v : interp.domain().elements())
    if (!cases.count(v))
      throw Error("case split does not cover domain value " + v.str());
  for (const auto& [v, g] : cases)
    if (!interp.domain().contains(v))
      throw Error("case split value " + v.str() + " outside domain " + interp.domain().str());

  ProvenanceSemantics sem(Kind::CaseSplit, std::move(interp));
  const ProvenanceGraph& first = cases.begin()->second;
  auto ids_of = [](const ProvenanceGraph& g) {
    std::vector<std::string> ids;
    for (const ArtifactNode& a : g.artifacts) ids.push_back("a:" + a.id);
    for (const ProcessNode& p : g.processes) ids.push_back("p:" + p.id);
    std::sort(ids.begin(), ids.end());
    return ids;
  };
  const std::vector<std::string> node_ids = ids_of(first);
  for (const auto& [v, g] : cases) {
    require_usable(g, sem.interp_);
    if (g.inputs != first.inputs)
      throw Error("case graphs disagree on the designated input list");
    if (ids_of(g) != node_ids) throw Error("case graphs disagree on the node set");
  }
  sem.inputs_ = first.inputs;
  if (split_input < 0 || split_input >= static_cast<int>(sem.inputs_.size()))
    throw Error("split input position out of range");
  sem.split_input_ = split_input;
  for (auto& [v, g] : cases) sem.cases_.emplace_back(v, std::move(g));
  return sem;
}

std::string ProvenanceSemantics::kind_str() const {
  switch (kind_) {
    case Kind::Constant: return "constant-graph";
    case Kind::Fixed: return "fixed-graph";
    case Kind::CaseSplit: return "case-split";
  }
  return "?";
}

int ProvenanceSemantics::case_index_for(std::span<const Value> u) const {
  switch (kind_) {
    case Kind::Constant:
      return -1;
    case Kind::Fixed:
      return 0;
    case Kind::CaseSplit: {
      Value key = u[split_input_];
      for (std::size_t i = 0; i < cases_.size(); ++i)
        if (cases_[i].first == key) return static_cast<int>(i);
      throw Error("no case for split value " + key.str());
    }
  }
  return -1;
}

ProvenanceGraph ProvenanceSemantics::graph_for(std::span<const Value> u) const {
  if (static_cast<int>(u.size()) != arity())
    throw Error("semantics of arity " + std::to_string(arity()) + " applied to " +
                std::to_string(u.size()) + " inputs");
  if (kind_ == Kind::Constant) return constant_graph_at(cases_[0].second, interp_, u);
  return cases_[case_index_for(u)].second;
}

// ---------------------------------------------------------------------------
// CausalSemantics
// ---------------------------------------------------------------------------

CausalSemantics CausalSemantics::of_graph_semantics(const ProvenanceSemantics& sem) {
  // Compile one case to fix the signature (constant graphs share the
  // reference's structure, so compiling the reference works for all kinds).
  CausalFunction probe(graph_model(sem.case_graph(0), sem.interp(), /*proxy_inputs=*/false));

  CausalSemantics out;
  out.domain_ = sem.domain();
  out.inputs_ = probe.inputs();
  out.variables_ = probe.variables();
  out.label_ = sem.kind_str() + " semantics";

  // Designated inputs are a subset of the compiled inputs (all sources);
  // map each designated position to its sorted-source position.
  std::vector<int> designated_pos;
  for (const std::string& id : sem.input_ids()) {
    auto it = std::lower_bound(out.inputs_.begin(), out.inputs_.end(), id);
    if (it == out.inputs_.end() || *it != id)
      throw Error("designated input '" + id + "' is not a compiled input");
    designated_pos.push_back(static_cast<int>(it - out.inputs_.begin()));
  }

  if (sem.kind() == ProvenanceSemantics::Kind::Constant) {
    auto reference = std::make_shared<ProvenanceGraph>(sem.case_graph(0));
    auto interp = std::make_shared<Interpretation>(sem.interp());
    auto inputs = out.inputs_;
    auto check = std::make_shared<CausalFunction>(std::move(probe));
    out.producer_ = [reference, interp, inputs, designated_pos,
                     check](std::span<const Value> u) {
      // Every source takes its value from u, so the constant models stay
      // faithful on sources the designated signature does not cover.
      ProvenanceGraph ref = *reference;
      for (ArtifactNode& a : ref.artifacts) {
        if (ref.generator_of(a.id)) continue;
        auto it = std::lower_bound(inputs.begin(), inputs.end(), a.id);
        a.value = u[it - inputs.begin()];
      }
      std::vector<Value> designated(designated_pos.size());
      for (std::size_t i = 0; i < designated_pos.size(); ++i)
        designated[i] = u[designated_pos[i]];
      CausalFunction fn(
          graph_model(constant_graph_at(ref, *interp, designated), *interp, false));
      if (!fn.same_signature(*check))
        throw Error("constant case compiled to a different signature");
      return fn;
    };
    return out;
  }

  auto functions = std::make_shared<std::vector<CausalFunction>>();
  for (std::size_t i = 0; i < sem.case_count(); ++i) {
    functions->emplace_back(graph_model(sem.case_graph(i), sem.interp(), false));
    if (!functions->back().same_signature(probe))
      throw Error("case graphs compile to different signatures");
  }
  auto shared_sem = std::make_shared<ProvenanceSemantics>(sem);
  out.producer_ = [shared_sem, functions, designated_pos](std::span<const Value> u) {
    std::vector<Value> designated(designated_pos.size());
    for (std::size_t i = 0; i < designated_pos.size(); ++i)
      designated[i] = u[designated_pos[i]];
    return (*functions)[shared_sem->case_index_for(designated)];
  };
  return out;
}

CausalSemantics CausalSemantics::fixed_model(CausalModel m, std::string label) {
  CausalSemantics out;
  out.domain_ = m.domain();
  CausalFunction fn(std::move(m));
  out.inputs_ = fn.inputs();
  out.variables_ = fn.variables();
  out.label_ = std::move(label);
  out.producer_ = [fn](std::span<const Value>) { return fn; };
  return out;
}

CausalFunction CausalSemantics::function_for(std::span<const Value> u) const {
  if (u.size() != inputs_.size())
    throw Error("semantics over " + std::to_string(inputs_.size()) + " inputs applied to " +
                std::to_string(u.size()) + " values");
  return producer_(u);
}

// ---------------------------------------------------------------------------
// intervention enumeration
// ---------------------------------------------------------------------------

std::vector<std::vector<std::pair<int, Value>>> enumerate_interventions(
    const std::vector<std::string>& variables, const Domain& dom, int max_size) {
  const int n = static_cast<int>(variables.size());
  if (max_size < 0) max_size = n <= 8 ? n : 3;
  max_size = std::min(max_size, n);

  const std::uint64_t d = dom.size();
  std::uint64_t total = 0, binom = 1, dk = 1;
  for (int k = 0; k <= max_size; ++k) {
    total += binom * dk;
    if (total > 5'000'000)
      throw Error("intervention enumeration too large; pass a smaller size cap");
    binom = binom * (n - k) / (k + 1);
    dk *= d;
  }

  std::vector<std::vector<std::pair<int, Value>>> out;
  out.reserve(total);
  std::vector<int> subset;
  for (int size = 0; size <= max_size; ++size) {
    subset.resize(size);
    for (int i = 0; i < size; ++i) subset[i] = i;
    while (true) {
      // all value tuples for this subset, rightmost position fastest
      std::vector<int> ord(size, 0);
      while (true) {
        std::vector<std::pair<int, Value>> tau(size);
        for (int i = 0; i < size; ++i) tau[i] = {subset[i], dom.elements()[ord[i]]};
        out.push_back(std::move(tau));
        int pos = size - 1;
        while (pos >= 0 && ord[pos] + 1 == static_cast<int>(dom.size())) ord[pos--] = 0;
        if (pos < 0) break;
        ++ord[pos];
      }
      if (size == 0) break;
      // next combination in lexicographic order
      int pos = size - 1;
      while (pos >= 0 && subset[pos] == n - size + pos) --pos;
      if (pos < 0) break;
      ++subset[pos];
      for (int i = pos + 1; i < size; ++i) subset[i] = subset[i - 1] + 1;
    }
  }
  return out;
}

std::string intervention_str(std::span<const std::pair<int, Value>> tau,
                             const std::vector<std::string>& variables) {
  std::string s = "[";
  for (std::size_t i = 0; i < tau.size(); ++i)
    s += (i ? ", " : "") + variables[tau[i].first] + ":=" + tau[i].second.str();
  return s + "]";
}

// ---------------------------------------------------------------------------
// grade checks
// ---------------------------------------------------------------------------

std::string Mismatch::str() const {
  std::string s = "at u=" + InputSpace::tuple_str(u);
  if (u_prime) s += ", u'=" + InputSpace::tuple_str(*u_prime);
  if (tau) s += ", tau=" + *tau;
  s += ": " + at + ": expected " + expected.str() + ", got " + got.str();
  return s;
}

std::string CheckResult::str() const {
  if (holds) return "holds";
  return "fails: " + (counterexample ? counterexample->str() : std::string("(no witness)"));
}

namespace {

void require_functional_signature(const ProvenanceSemantics& P, const BlackBoxFunction& f) {
  if (!(P.space() == f.space()))
    throw Error("semantics and target disagree on arity or domain");
}

// Caches one GraphFunction per stored case; Constant builds per input.
class FunctionalView {
 public:
  explicit FunctionalView(const ProvenanceSemantics& P) : sem_(P) {
    built_.resize(std::max<std::size_t>(sem_.case_count(), 1));
  }

  const GraphFunction& for_input(std::span<const Value> u) {
    int idx = sem_.case_index_for(u);
    if (idx < 0) {
      scratch_.emplace(sem_.graph_for(u), sem_.interp());
      return *scratch_;
    }
    if (!built_[idx]) built_[idx].emplace(sem_.case_graph(idx), sem_.interp());
    return *built_[idx];
  }

 private:
  const ProvenanceSemantics& sem_;
  std::vector<std::optional<GraphFunction>> built_;
  std::optional<GraphFunction> scratch_;
};

}  // namespace

CheckResult is_pointwise_approx(const ProvenanceSemantics& P, const BlackBoxFunction& f) {
  require_functional_signature(P, f);
  FunctionalView view(P);
  const InputSpace space = P.space();
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    const std::vector<Value> u = space.tuple_at(i);
    const Value got = view.for_input(u)(u);
    const Value want = f(u);
    if (got != want)
      return {false, Mismatch{u, std::nullopt, std::nullopt, "result", want, got}};
  }
  return {true, std::nullopt};
}

CheckResult is_global_approx(const ProvenanceSemantics& P, const BlackBoxFunction& f) {
  require_functional_signature(P, f);
  FunctionalView view(P);
  const InputSpace space = P.space();
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    const std::vector<Value> u = space.tuple_at(i);
    const GraphFunction& gf = view.for_input(u);
    for (std::uint64_t j = 0; j < space.size(); ++j) {
      const std::vector<Value> up = space.tuple_at(j);
      const Value got = gf(up);
      const Value want = f(up);
      if (got != want) return {false, Mismatch{u, up, std::nullopt, "result", want, got}};
    }
  }
  return {true, std::nullopt};
}

namespace {

void require_causal_signature(const CausalSemantics& P, const CausalFunction& f) {
  if (P.inputs() != f.inputs() || P.variables() != f.variables() || !(P.domain() == f.domain()))
    throw Error("semantics and target disagree on the causal signature");
}

// Shared sweep: compare P's function for u against f at u' under every tau.
CheckResult causal_sweep(const CausalSemantics& P, const CausalFunction& f, int max_tau_size,
                         bool all_probes, bool all_taus) {
  require_causal_signature(P, f);
  const InputSpace space = P.space();
  const std::vector<std::string>& vars = P.variables();
  std::vector<std::vector<std::pair<int, Value>>> taus;
  if (all_taus)
    taus = enumerate_interventions(vars, P.domain(), max_tau_size);
  else
    taus.push_back({});

  std::vector<Value> got(vars.size()), want(vars.size());
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    const std::vector<Value> u = space.tuple_at(i);
    const CausalFunction pf = P.function_for(u);
    const std::uint64_t probes = all_probes ? space.size() : 1;
    for (std::uint64_t j = 0; j < probes; ++j) {
      const std::vector<Value> up = all_probes ? space.tuple_at(j) : u;
      for (const auto& tau : taus) {
        pf.apply(tau, up, got);
        f.apply(tau, up, want);
        for (std::size_t k = 0; k < vars.size(); ++k)
          if (got[k] != want[k]) {
            Mismatch m{u,
                       all_probes ? std::optional(up) : std::nullopt,
                       all_taus ? std::optional(intervention_str(tau, vars)) : std::nullopt,
                       vars[k],
                       want[k],
                       got[k]};
            return {false, std::move(m)};
          }
      }
    }
  }
  return {true, std::nullopt};
}

}  // namespace

CheckResult is_pointwise_approx(const CausalSemantics& P, const CausalFunction& f) {
  return causal_sweep(P, f, 0, /*all_probes=*/false, /*all_taus=*/false);
}

CheckResult is_local_approx(const CausalSemantics& P, const CausalFunction& f,
                            int max_tau_size) {
  return causal_sweep(P, f, max_tau_size, /*all_probes=*/false, /*all_taus=*/true);
}

CheckResult is_global_approx(const CausalSemantics& P, const CausalFunction& f,
                             int max_tau_size) {
  return causal_sweep(P, f, max_tau_size, /*all_probes=*/true, /*all_taus=*/true);
}

// ---------------------------------------------------------------------------
// predictive power
// ---------------------------------------------------------------------------

PredictivePowerRelation::PredictivePowerRelation(InputSpace space, std::vector<bool> matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  if (matrix_.size() != space_.size() * space_.size())
    throw Error("relation matrix does not match its input space");
}

bool PredictivePowerRelation::related(std::uint64_t u, std::uint64_t up) const {
  return matrix_[u * space_.size() + up];
}

bool PredictivePowerRelation::is_reflexive() const {
  for (std::uint64_t i = 0; i < space_.size(); ++i)
    if (!related(i, i)) return false;
  return true;
}

bool PredictivePowerRelation::is_total() const {
  return std::all_of(matrix_.begin(), matrix_.end(), [](bool b) { return b; });
}

std::uint64_t PredictivePowerRelation::pair_count() const {
  return static_cast<std::uint64_t>(std::count(matrix_.begin(), matrix_.end(), true));
}

double PredictivePowerRelation::density() const {
  if (matrix_.empty()) return 0.0;
  return static_cast<double>(pair_count()) / static_cast<double>(matrix_.size());
}

std::string PredictivePowerRelation::dump() const {
  std::string out;
  for (std::uint64_t i = 0; i < space_.size(); ++i)
    for (std::uint64_t j = 0; j < space_.size(); ++j)
      if (related(i, j))
        out += InputSpace::tuple_str(space_.tuple_at(i)) + " ~> " +
               InputSpace::tuple_str(space_.tuple_at(j)) + "\n";
  return out;
}

std::string PredictivePowerRelation::stats() const {
  char density_buf[32];
  std::snprintf(density_buf, sizeof density_buf, "%.4f", density());
  std::string out;
  out += "reflexive: " + std::string(is_reflexive() ? "yes" : "no") + "\n";
  out += "total:     " + std::string(is_total() ? "yes" : "no") + "\n";
  out += "related:   " + std::to_string(pair_count()) + " of " +
         std::to_string(matrix_.size()) + " pairs (density " + density_buf + ")\n";
  return out;
}

namespace {

void require_power_budget(const InputSpace& space, std::uint64_t budget) {
  const std::uint64_t n = space.size();
  if (n != 0 && n > budget / n)
    throw Error("predictive power needs " + std::to_string(n) + "x" + std::to_string(n) +
                " pairs, over the budget of " + std::to_string(budget));
}

}  // namespace

PredictivePowerRelation predictive_power(const ProvenanceSemantics& P, const BlackBoxFunction& f,
                                         std::uint64_t budget) {
  require_functional_signature(P, f);
  const InputSpace space = P.space();
  require_power_budget(space, budget);
  FunctionalView view(P);
  std::vector<bool> matrix(space.size() * space.size());
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    const GraphFunction& gf = view.for_input(space.tuple_at(i));
    for (std::uint64_t j = 0; j < space.size(); ++j) {
      const std::vector<Value> up = space.tuple_at(j);
      matrix[i * space.size() + j] = gf(up) == f(up);
    }
  }
  return PredictivePowerRelation(space, std::move(matrix));
}

PredictivePowerRelation predictive_power(const CausalSemantics& P, const CausalFunction& f,
                                         int max_tau_size, std::uint64_t budget) {
  require_causal_signature(P, f);
  const InputSpace space = P.space();
  require_power_budget(space, budget);
  const std::vector<std::string>& vars = P.variables();
  const auto taus = enumerate_interventions(vars, P.domain(), max_tau_size);

  std::vector<bool> matrix(space.size() * space.size());
  std::vector<Value> got(vars.size()), want(vars.size());
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    const CausalFunction pf = P.function_for(space.tuple_at(i));
    for (std::uint64_t j = 0; j < space.size(); ++j) {
      const std::vector<Value> up = space.tuple_at(j);
      bool ok = true;
      for (const auto& tau : taus) {
        pf.apply(tau, up, got);
        f.apply(tau, up, want);
        if (got != want) {
          ok = false;
          break;
        }
      }
      matrix[i * space.size() + j] = ok;
    }
  }
  return PredictivePowerRelation(space, std::move(matrix));
}

const char* power_ordering_name(PowerOrdering o) {
  switch (o) {
    case PowerOrdering::Equal: return "equal";
    case PowerOrdering::LessOrEqual: return "less-or-equal";
    case PowerOrdering::GreaterOrEqual: return "greater-or-equal";
    case PowerOrdering::Incomparable: return "incomparable";
  }
  return "?";
}

PowerOrdering compare_power(const PredictivePowerRelation& r1,
                            const PredictivePowerRelation& r2) {
  if (!(r1.space() == r2.space())) throw Error("relations live on different input spaces");
  bool le = true, ge = true;
  for (std::uint64_t i = 0; i < r1.space().size() && (le || ge); ++i)
    for (std::uint64_t j = 0; j < r1.space().size() && (le || ge); ++j) {
      if (r1.related(i, j) && !r2.related(i, j)) le = false;
      if (r2.related(i, j) && !r1.related(i, j)) ge = false;
    }
  if (le && ge) return PowerOrdering::Equal;
  if (le) return PowerOrdering::LessOrEqual;
  if (ge) return PowerOrdering::GreaterOrEqual;
  return PowerOrdering::Incomparable;
}

}  // namespace causeway
