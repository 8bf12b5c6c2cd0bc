#include "causeway/model.hpp"

#include <algorithm>
#include <queue>

#include "causeway/error.hpp"

namespace causeway {

// ---------------------------------------------------------------------------
// Valuation
// ---------------------------------------------------------------------------

std::optional<Value> Valuation::get(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

Value Valuation::at(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw Error("valuation has no entry for '" + name + "'");
  return it->second;
}

bool Valuation::covers(const std::vector<std::string>& names) const {
  for (const std::string& n : names)
    if (!entries_.count(n)) return false;
  return true;
}

Valuation Valuation::restricted_to(const std::vector<std::string>& names) const {
  Valuation out;
  for (const std::string& n : names) {
    auto it = entries_.find(n);
    if (it != entries_.end()) out.set(n, it->second);
  }
  return out;
}

std::string Valuation::str() const {
  std::string s;
  for (const auto& [name, v] : entries_) {
    if (!s.empty()) s += ", ";
    s += name + "=" + v.str();
  }
  return s;
}

// ---------------------------------------------------------------------------
// CausalGraph
// ---------------------------------------------------------------------------

CausalGraph::CausalGraph(std::vector<std::string> vertices,
                         std::map<std::string, std::vector<std::string>> parents)
    : vertices_(std::move(vertices)), parents_(std::move(parents)) {
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
  for (auto& [child, ps] : parents_) {
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    for (const std::string& p : ps) children_[p].push_back(child);
  }
  for (auto& [parent, cs] : children_) {
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  }
}

const std::vector<std::string>& CausalGraph::parents_of(const std::string& child) const {
  static const std::vector<std::string> empty;
  auto it = parents_.find(child);
  return it == parents_.end() ? empty : it->second;
}

std::vector<std::pair<std::string, std::string>> CausalGraph::edges() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [child, ps] : parents_)
    for (const std::string& p : ps) out.emplace_back(p, child);
  std::sort(out.begin(), out.end());
  return out;
}

bool CausalGraph::has_edge(const std::string& parent, const std::string& child) const {
  const auto& ps = parents_of(child);
  return std::binary_search(ps.begin(), ps.end(), parent);
}

std::set<std::string> CausalGraph::descendants_of(const std::string& v) const {
  std::set<std::string> seen{v};
  std::vector<std::string> work{v};
  while (!work.empty()) {
    std::string cur = work.back();
    work.pop_back();
    auto it = children_.find(cur);
    if (it == children_.end()) continue;
    for (const std::string& c : it->second)
      if (seen.insert(c).second) work.push_back(c);
  }
  return seen;
}

bool CausalGraph::is_subgraph_of(const CausalGraph& other) const {
  for (const auto& [child, ps] : parents_)
    for (const std::string& p : ps)
      if (!other.has_edge(p, child)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// CausalModel construction
// ---------------------------------------------------------------------------

namespace {

void check_constants_in_domain(const Expression& e, const Domain& dom) {
  switch (e.kind()) {
    case Expression::Kind::Constant:
      if (!dom.contains(e.constant_value()))
        throw Error("constant " + e.constant_value().str() + " not in domain " + dom.str());
      return;
    case Expression::Kind::Table:
      if (!(e.lookup().domain() == dom))
        throw Error("lookup table domain " + e.lookup().domain().str() +
                    " does not match model domain " + dom.str());
      break;
    default:
      break;
  }
  for (const Expression& a : e.args()) check_constants_in_domain(a, dom);
}

}  // namespace

CausalModel::CausalModel(Domain domain, std::vector<std::string> exogenous,
                         std::vector<std::pair<std::string, Expression>> mechanisms)
    : domain_(std::move(domain)), exogenous_(std::move(exogenous)) {
  std::sort(exogenous_.begin(), exogenous_.end());
  if (std::adjacent_find(exogenous_.begin(), exogenous_.end()) != exogenous_.end())
    throw Error("duplicate exogenous variable");
  for (const std::string& name : exogenous_)
    if (name.empty()) throw Error("empty variable name");

  for (auto& [name, expr] : mechanisms) {
    if (name.empty()) throw Error("empty variable name");
    if (source_.count(name)) throw Error("duplicate mechanism for variable '" + name + "'");
    if (std::binary_search(exogenous_.begin(), exogenous_.end(), name))
      throw Error("variable '" + name + "' declared both exogenous and endogenous");
    check_constants_in_domain(expr, domain_);
    source_.emplace(name, std::move(expr));
    endogenous_.push_back(name);
  }
  std::sort(endogenous_.begin(), endogenous_.end());

  vars_ = exogenous_;
  vars_.insert(vars_.end(), endogenous_.begin(), endogenous_.end());
  num_exo_ = static_cast<int>(exogenous_.size());
  for (int i = 0; i < static_cast<int>(vars_.size()); ++i) index_[vars_[i]] = i;

  for (const auto& [name, expr] : source_)
    for (const std::string& ref : expr.variables())
      if (!index_.count(ref))
        throw Error("mechanism for '" + name + "' references undeclared variable '" + ref + "'");

  compile_all();
}

void CausalModel::compile_all() {
  compiled_.resize(endogenous_.size());
  compiled_of_var_.assign(vars_.size(), -1);

  for (std::size_t k = 0; k < endogenous_.size(); ++k) {
    const std::string& name = endogenous_[k];
    Compiled& c = compiled_[k];
    c.var = index_.at(name);
    compiled_of_var_[c.var] = static_cast<int>(k);

    int depth = 0;
    std::set<int> parents;
    auto emit = [&](const Expression& e, auto&& self) -> void {
      switch (e.kind()) {
        case Expression::Kind::Variable: {
          Instr in;
          in.kind = Instr::K::PushVar;
          in.var = index_.at(e.variable_name());
          parents.insert(in.var);
          c.postfix.push_back(in);
          ++depth;
          break;
        }
        case Expression::Kind::Constant: {
          Instr in;
          in.kind = Instr::K::PushConst;
          in.constant = e.constant_value();
          c.postfix.push_back(in);
          ++depth;
          break;
        }
        case Expression::Kind::Apply:
        case Expression::Kind::Table: {
          for (const Expression& a : e.args()) self(a, self);
          Instr in;
          if (e.kind() == Expression::Kind::Apply) {
            in.kind = Instr::K::ApplyOp;
            in.op = e.op();
          } else {
            in.kind = Instr::K::ApplyTable;
            in.table = &e.lookup();  // owned by source_, stable for our lifetime
          }
          in.argc = static_cast<int>(e.args().size());
          c.postfix.push_back(in);
          depth += 1 - in.argc;
          break;
        }
      }
      c.max_stack = std::max(c.max_stack, depth);
    };
    emit(source_.at(name), emit);
    c.parents.assign(parents.begin(), parents.end());
  }

  // Topological order over endogenous variables (Kahn, smallest index first
  // so the order is deterministic).
  const int n = num_vars();
  std::vector<std::vector<int>> dependents(n);
  std::vector<int> pending(n, 0);
  for (const Compiled& c : compiled_)
    for (int p : c.parents)
      if (p >= num_exo_) {
        dependents[p].push_back(c.var);
        ++pending[c.var];
      }

  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (const Compiled& c : compiled_)
    if (pending[c.var] == 0) ready.push(c.var);

  topo_.clear();
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    topo_.push_back(v);
    for (int d : dependents[v])
      if (--pending[d] == 0) ready.push(d);
  }
  if (topo_.size() != endogenous_.size()) {
    std::string cyc;
    for (const Compiled& c : compiled_)
      if (pending[c.var] > 0) cyc += (cyc.empty() ? "" : ", ") + vars_[c.var];
    throw Error("mechanisms are cyclic through: " + cyc);
  }
}

// ---------------------------------------------------------------------------
// CausalModel queries
// ---------------------------------------------------------------------------

bool CausalModel::is_exogenous(const std::string& name) const {
  return std::binary_search(exogenous_.begin(), exogenous_.end(), name);
}

bool CausalModel::is_endogenous(const std::string& name) const {
  return std::binary_search(endogenous_.begin(), endogenous_.end(), name);
}

const Expression& CausalModel::mechanism(const std::string& endo) const {
  auto it = source_.find(endo);
  if (it == source_.end()) throw Error("no mechanism for variable '" + endo + "'");
  return it->second;
}

int CausalModel::index_of(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

Value CausalModel::run_mechanism(const Compiled& mech, std::span<const Value> state) const {
  Value local[128];
  std::vector<Value> heap;
  Value* stack = local;
  if (mech.max_stack > 128) {
    heap.resize(static_cast<std::size_t>(mech.max_stack));
    stack = heap.data();
  }
  int top = 0;
  for (const Instr& in : mech.postfix) {
    switch (in.kind) {
      case Instr::K::PushConst:
        stack[top++] = in.constant;
        break;
      case Instr::K::PushVar:
        stack[top++] = state[static_cast<std::size_t>(in.var)];
        break;
      case Instr::K::ApplyOp:
        top -= in.argc;
        stack[top] = apply_op(in.op, std::span<const Value>(stack + top, static_cast<std::size_t>(in.argc)), domain_);
        ++top;
        break;
      case Instr::K::ApplyTable:
        top -= in.argc;
        stack[top] = in.table->at(std::span<const Value>(stack + top, static_cast<std::size_t>(in.argc)));
        ++top;
        break;
    }
  }
  return stack[0];
}

void CausalModel::eval_state(std::span<Value> state, std::span<const char> pinned) const {
  for (int v : topo_) {
    if (!pinned.empty() && pinned[static_cast<std::size_t>(v)]) continue;
    state[static_cast<std::size_t>(v)] =
        run_mechanism(compiled_[static_cast<std::size_t>(compiled_of_var_[v])], state);
  }
}

Valuation CausalModel::state_to_valuation(std::span<const Value> state) const {
  Valuation out;
  for (int i = 0; i < num_vars(); ++i) out.set(vars_[i], state[static_cast<std::size_t>(i)]);
  return out;
}

Valuation CausalModel::evaluate(const Valuation& exogenous_assignment) const {
  if (exogenous_assignment.size() != exogenous_.size() ||
      !exogenous_assignment.covers(exogenous_))
    throw Error("exogenous assignment must cover exactly the exogenous variables");
  std::vector<Value> state(vars_.size());
  for (int i = 0; i < num_exo_; ++i) {
    Value v = exogenous_assignment.at(vars_[i]);
    if (!domain_.contains(v))
      throw Error("value " + v.str() + " for '" + vars_[i] + "' not in domain " + domain_.str());
    state[static_cast<std::size_t>(i)] = v;
  }
  eval_state(state);
  return state_to_valuation(state);
}

CausalModel CausalModel::intervene(const std::string& var, Value v) const {
  return intervene(std::vector<std::pair<std::string, Value>>{{var, v}});
}

CausalModel CausalModel::intervene(
    const std::vector<std::pair<std::string, Value>>& assignments) const {
  std::map<std::string, Expression> mechs;
  for (const auto& [name, expr] : source_) mechs.emplace(name, expr);
  for (const auto& [name, v] : assignments) {
    if (!has_variable(name)) throw Error("cannot intervene on unknown variable '" + name + "'");
    if (is_exogenous(name))
      throw Error("cannot intervene on exogenous variable '" + name + "'");
    if (!domain_.contains(v))
      throw Error("intervention value " + v.str() + " not in domain " + domain_.str());
    mechs.insert_or_assign(name, Expression::constant(v));
  }
  std::vector<std::pair<std::string, Expression>> list(mechs.begin(), mechs.end());
  return CausalModel(domain_, exogenous_, std::move(list));
}

bool CausalModel::is_consistent(const Valuation& full) const {
  if (coverage_of(full) != Coverage::FullState)
    throw Error("consistency check needs a valuation over all of U and V");
  std::vector<Value> state(vars_.size());
  for (int i = 0; i < num_vars(); ++i) {
    Value v = full.at(vars_[i]);
    if (!domain_.contains(v))
      throw Error("value " + v.str() + " for '" + vars_[i] + "' not in domain " + domain_.str());
    state[static_cast<std::size_t>(i)] = v;
  }
  for (std::size_t k = 0; k < endogenous_.size(); ++k)
    if (run_mechanism(compiled_[k], state) != state[static_cast<std::size_t>(compiled_[k].var)])
      return false;
  return true;
}

CausalModel::Coverage CausalModel::coverage_of(const Valuation& v) const {
  if (v.size() == vars_.size() && v.covers(vars_)) return Coverage::FullState;
  if (v.size() == endogenous_.size() && v.covers(endogenous_)) return Coverage::EndogenousOnly;
  return Coverage::Partial;
}

// ---------------------------------------------------------------------------
// dependency graphs
// ---------------------------------------------------------------------------

CausalGraph CausalModel::syntactic_graph() const {
  std::map<std::string, std::vector<std::string>> parents;
  for (std::size_t k = 0; k < endogenous_.size(); ++k) {
    std::vector<std::string> ps;
    for (int p : compiled_[k].parents) ps.push_back(vars_[static_cast<std::size_t>(p)]);
    parents[endogenous_[k]] = std::move(ps);
  }
  return CausalGraph(vars_, std::move(parents));
}

CausalGraph CausalModel::least_causal_graph() const {
  // A variable is a genuine parent iff, for some assignment of the other
  // syntactic parents, varying it alone changes the mechanism's output.
  // Variables outside the syntactic parent set cannot matter, so the
  // enumeration stays within that set.
  const auto& elems = domain_.elements();
  std::map<std::string, std::vector<std::string>> parents;
  std::vector<Value> state(vars_.size(), elems[0]);

  for (std::size_t k = 0; k < endogenous_.size(); ++k) {
    const Compiled& mech = compiled_[k];
    const std::vector<int>& syn = mech.parents;
    std::vector<std::string> true_parents;

    for (std::size_t pi = 0; pi < syn.size(); ++pi) {
      std::vector<int> others;
      for (std::size_t j = 0; j < syn.size(); ++j)
        if (j != pi) others.push_back(syn[j]);

      unsigned long long combos = 1;
      for (std::size_t j = 0; j < others.size(); ++j) combos *= elems.size();

      bool depends = false;
      for (unsigned long long c = 0; c < combos && !depends; ++c) {
        unsigned long long rest = c;
        for (std::size_t j = others.size(); j > 0; --j) {
          state[static_cast<std::size_t>(others[j - 1])] = elems[rest % elems.size()];
          rest /= elems.size();
        }
        bool first = true;
        Value seen;
        for (Value v : elems) {
          state[static_cast<std::size_t>(syn[pi])] = v;
          Value out = run_mechanism(mech, state);
          if (first) {
            seen = out;
            first = false;
          } else if (out != seen) {
            depends = true;
            break;
          }
        }
      }
      if (depends) true_parents.push_back(vars_[static_cast<std::size_t>(syn[pi])]);
    }
    parents[endogenous_[k]] = std::move(true_parents);
  }
  return CausalGraph(vars_, std::move(parents));
}

}  // namespace causeway
