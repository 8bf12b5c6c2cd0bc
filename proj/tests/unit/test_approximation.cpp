#include <cstdint>
#include <map>

#include "causeway/approximation.hpp"
#include "causeway/error.hpp"
#include "causeway/graph_json.hpp"
#include "causeway/provenance.hpp"
#include "causeway/text_format.hpp"
#include "causeway/workspace.hpp"
#include "data_path.hpp"
#include "doctest.h"

using namespace causeway;
using causeway::testing::data_path;

namespace {

ProvenanceGraph load_graph(const std::string& name) {
  return parse_graph(read_file(data_path(name)));
}

Interpretation load_interp(const std::string& name) {
  return parse_interpretation(read_file(data_path(name)));
}

CausalModel load_model(const std::string& name) {
  return parse_model(read_file(data_path(name)));
}

std::vector<Value> vals(std::initializer_list<int> xs) {
  std::vector<Value> out;
  for (int x : xs) out.push_back(Value::of(x));
  return out;
}

}  // namespace

TEST_CASE("input spaces enumerate lexicographically, leftmost most significant") {
  InputSpace s(Domain::modular(3), 2);
  CHECK(s.size() == 9);
  CHECK(s.tuple_at(0) == vals({0, 0}));
  CHECK(s.tuple_at(1) == vals({0, 1}));
  CHECK(s.tuple_at(3) == vals({1, 0}));
  CHECK(s.tuple_at(8) == vals({2, 2}));
  for (std::uint64_t i = 0; i < s.size(); ++i) CHECK(s.index_of(s.tuple_at(i)) == i);

  InputSpace bottomed(Domain::modular(2, true), 2);
  CHECK(bottomed.size() == 9);
  CHECK(bottomed.tuple_at(8) == std::vector<Value>{Value::bottom(), Value::bottom()});
  CHECK(InputSpace::tuple_str(bottomed.tuple_at(5)) == "(1, bot)");
  CHECK(InputSpace::tuple_str({}) == "()");

  InputSpace empty(Domain::boolean(), 0);
  CHECK(empty.size() == 1);
  CHECK(empty.tuple_at(0).empty());

  CHECK_THROWS_AS(InputSpace(Domain::modular(100), 11), Error);  // 10^22 tuples
}

TEST_CASE("black-box readings of models, graphs and expressions coincide") {
  CausalModel chain = load_model("chain.model");
  CHECK(default_result_variable(chain) == "Z");
  CHECK(default_result_variable(load_model("pow.model")) == "r");

  BlackBoxFunction from_m = BlackBoxFunction::from_model(chain, "Z");
  BlackBoxFunction from_g =
      BlackBoxFunction::from_graph(load_graph("chain.json"), load_interp("chain.interp"));
  REQUIRE(from_m.space() == from_g.space());
  for (std::uint64_t i = 0; i < from_m.space().size(); ++i) {
    auto u = from_m.space().tuple_at(i);
    CHECK(from_m(u) == from_g(u));
  }

  BlackBoxFunction from_e = BlackBoxFunction::from_expression(
      chain.domain(), {"X"},
      Expression::apply(Op::Mul,
                        {Expression::apply(Op::Add, {Expression::variable("X"),
                                                     Expression::constant(Value::of(1))}),
                         Expression::constant(Value::of(2))}),
      "closed form");
  for (std::uint64_t i = 0; i < from_m.space().size(); ++i) {
    auto u = from_m.space().tuple_at(i);
    CHECK(from_e(u) == from_m(u));
  }

  CHECK_THROWS_AS(BlackBoxFunction::from_model(chain, "X"), Error);  // exogenous result
  CHECK_THROWS_AS(BlackBoxFunction::from_expression(chain.domain(), {"X"},
                                                    Expression::variable("Q"), "bad"),
                  Error);
}

TEST_CASE("causal functions apply interventions on top of inputs") {
  CausalFunction f(load_model("chain.model"));
  CHECK(f.inputs() == std::vector<std::string>{"X"});
  CHECK(f.variables() == std::vector<std::string>{"Y", "Z"});

  std::vector<Value> out(2);
  f.apply({}, vals({3}), out);
  CHECK(out == vals({4, 1}));  // Y = 4, Z = 8 mod 7

  std::vector<std::pair<int, Value>> tau = {{0, Value::of(5)}};  // Y := 5
  f.apply(tau, vals({3}), out);
  CHECK(out == vals({5, 3}));  // Z follows the pinned Y

  Valuation tau_v;
  tau_v.set("Z", Value::of(0));
  Valuation u;
  u.set("X", Value::of(3));
  Valuation res = f.apply(tau_v, u);
  CHECK(res.at("Y") == Value::of(4));
  CHECK(res.at("Z") == Value::of(0));

  CHECK(f.same_signature(CausalFunction(load_model("chain.model"))));
  CHECK_FALSE(f.same_signature(CausalFunction(load_model("pow.model"))));
}

TEST_CASE("intervention enumeration is subsets by size, values rightmost-fastest") {
  std::vector<std::string> vars = {"A", "B"};
  Domain b = Domain::boolean();
  auto taus = enumerate_interventions(vars, b);
  REQUIRE(taus.size() == 9);  // {} + 2*2 singletons + 4 pairs
  CHECK(taus[0].empty());
  CHECK(intervention_str(taus[0], vars) == "[]");
  CHECK(intervention_str(taus[1], vars) == "[A:=0]");
  CHECK(intervention_str(taus[2], vars) == "[A:=1]");
  CHECK(intervention_str(taus[3], vars) == "[B:=0]");
  CHECK(intervention_str(taus[4], vars) == "[B:=1]");
  CHECK(intervention_str(taus[5], vars) == "[A:=0, B:=0]");
  CHECK(intervention_str(taus[6], vars) == "[A:=0, B:=1]");
  CHECK(intervention_str(taus[8], vars) == "[A:=1, B:=1]");

  // nine variables fall back to the size cap of three
  std::vector<std::string> nine;
  for (char c = 'a'; c < 'a' + 9; ++c) nine.emplace_back(1, c);
  CHECK(enumerate_interventions(nine, b).size() == 1 + 9 * 2 + 36 * 4 + 84 * 8);

  // explicit sizes beyond the materialization guard are rejected
  std::vector<std::string> twenty;
  for (int i = 0; i < 20; ++i) twenty.push_back("v" + std::to_string(i));
  CHECK_NOTHROW(enumerate_interventions(twenty, b, 1));
  CHECK_THROWS_AS(enumerate_interventions(twenty, b, 7), Error);
}

TEST_CASE("the constant semantics rebuilds the graph around each input") {
  LoadedSemantics ls = load_semantics_file(data_path("chainconst.sem"));
  const ProvenanceSemantics& sem = ls.semantics;
  CHECK(sem.kind() == ProvenanceSemantics::Kind::Constant);
  CHECK(sem.kind_str() == "constant-graph");
  CHECK(sem.arity() == 1);
  CHECK(sem.case_count() == 1);  // the reference graph it rebuilds from
  CHECK(sem.case_index_for(vals({0})) == -1);

  ProvenanceGraph g1 = sem.graph_for(vals({1}));
  REQUIRE(g1.find_process("pY") != nullptr);
  CHECK(g1.find_process("pY")->name == "const_2");
  CHECK(g1.find_process("pZ")->name == "const_4");
  CHECK(g1.used.empty());
  CHECK(g1.find_artifact("X")->value == Value::of(1));
  CHECK(g1.find_artifact("Y")->value == Value::of(2));
  CHECK(g1.find_artifact("Z")->value == Value::of(4));
  CHECK(g1.inputs == std::vector<std::string>{"X"});
  CHECK(g1.result == "Z");
  // node set identical to the reference, only relabeled
  ProvenanceGraph ref = ls.workspace.graph("chain");
  CHECK(g1.artifacts.size() == ref.artifacts.size());
  CHECK(g1.processes.size() == ref.processes.size());
  CHECK(g1.generated.size() == ref.generated.size());

  ProvenanceGraph g0 = sem.graph_for(vals({0}));
  CHECK(g0.find_process("pY")->name == "const_1");
  CHECK(g0.find_process("pZ")->name == "const_2");
}

TEST_CASE("the fixed semantics hands out one graph") {
  LoadedSemantics ls = load_semantics_file(data_path("chain_exact.sem"));
  CHECK(ls.semantics.kind() == ProvenanceSemantics::Kind::Fixed);
  CHECK(ls.semantics.kind_str() == "fixed-graph");
  CHECK(ls.semantics.case_count() == 1);
  ProvenanceGraph expected = ls.workspace.graph("chain");
  expected.canonicalize();
  for (int x = 0; x < 7; ++x) CHECK(ls.semantics.graph_for(vals({x})) == expected);
  CHECK(ls.semantics.case_index_for(vals({6})) == 0);
}

TEST_CASE("the case-split semantics picks by the designated input") {
  LoadedSemantics ls = load_semantics_file(data_path("powsem.sem"));
  const ProvenanceSemantics& sem = ls.semantics;
  CHECK(sem.kind() == ProvenanceSemantics::Kind::CaseSplit);
  CHECK(sem.kind_str() == "case-split");
  CHECK(sem.arity() == 3);
  CHECK(sem.case_count() == 5);
  CHECK(sem.input_ids() == std::vector<std::string>{"u", "x", "y"});

  // the split variable is u, the first designated input
  CHECK(sem.case_index_for(vals({2, 0, 0})) == sem.case_index_for(vals({2, 4, 4})));
  CHECK(sem.case_index_for(vals({0, 1, 1})) != sem.case_index_for(vals({1, 1, 1})));
  ProvenanceGraph g2 = sem.graph_for(vals({2, 1, 1}));
  REQUIRE(g2.find_process("pr") != nullptr);
  CHECK(g2.find_process("pr")->name == "sq");
}

TEST_CASE("case-split construction validates coverage and node sets") {
  Interpretation interp = load_interp("pow.interp");
  ProvenanceGraph u0 = load_graph("pow_u0.json");
  ProvenanceGraph u1 = load_graph("pow_u1.json");

  std::map<Value, ProvenanceGraph> partial;
  for (int v = 0; v < 4; ++v) partial[Value::of(v)] = load_graph("pow_u" + std::to_string(v) + ".json");
  CHECK_THROWS_WITH_AS(ProvenanceSemantics::case_split(0, partial, interp),
                       "case split does not cover domain value 4", Error);

  std::map<Value, ProvenanceGraph> mismatched;
  for (int v = 0; v < 5; ++v) mismatched[Value::of(v)] = u1;
  ProvenanceGraph alien = load_graph("chain.json");
  mismatched[Value::of(0)] = alien;
  CHECK_THROWS_AS(ProvenanceSemantics::case_split(0, mismatched, interp), Error);

  std::map<Value, ProvenanceGraph> fine;
  for (int v = 0; v < 5; ++v) fine[Value::of(v)] = load_graph("pow_u" + std::to_string(v) + ".json");
  CHECK_THROWS_WITH_AS(ProvenanceSemantics::case_split(7, fine, interp),
                       "split input position out of range", Error);
  CHECK_NOTHROW(ProvenanceSemantics::case_split(0, fine, interp));
}

TEST_CASE("grade checks: the trivial semantics is pointwise but not local") {
  LoadedSemantics ls = load_semantics_file(data_path("chainconst.sem"));
  Interpretation interp = ls.workspace.interpretation("interp");
  ProvenanceGraph chain = ls.workspace.graph("chain");

  // functional view: recomputes the right result at its own input only
  BlackBoxFunction f = BlackBoxFunction::from_graph(chain, interp);
  CHECK(is_pointwise_approx(ls.semantics, f).holds);
  CheckResult fg = is_global_approx(ls.semantics, f);
  CHECK_FALSE(fg.holds);
  REQUIRE(fg.counterexample.has_value());
  CHECK(fg.str() == "fails: at u=(0), u'=(1): result: expected 4, got 2");

  // causal view: interventions expose the frozen mechanisms
  CausalSemantics cs = CausalSemantics::of_graph_semantics(ls.semantics);
  CausalFunction target(graph_model(chain, interp, false));
  CHECK(is_pointwise_approx(cs, target).holds);
  CheckResult local = is_local_approx(cs, target);
  CHECK_FALSE(local.holds);
  CHECK(local.str() == "fails: at u=(0), tau=[Y:=0]: Z: expected 0, got 2");
  REQUIRE(local.counterexample.has_value());
  CHECK(local.counterexample->tau == "[Y:=0]");
  CHECK(local.counterexample->at == "Z");
  CHECK_FALSE(is_global_approx(cs, target).holds);
}

TEST_CASE("grade checks: the exact semantics passes every grade") {
  LoadedSemantics ls = load_semantics_file(data_path("chain_exact.sem"));
  Interpretation interp = ls.workspace.interpretation("interp");
  ProvenanceGraph chain = ls.workspace.graph("chain");

  BlackBoxFunction f = BlackBoxFunction::from_graph(chain, interp);
  CHECK(is_pointwise_approx(ls.semantics, f).holds);
  CHECK(is_global_approx(ls.semantics, f).holds);
  CHECK(is_global_approx(ls.semantics, f).str() == "holds");

  CausalSemantics cs = CausalSemantics::of_graph_semantics(ls.semantics);
  CausalFunction target(graph_model(chain, interp, false));
  CHECK(is_pointwise_approx(cs, target).holds);
  CHECK(is_local_approx(cs, target).holds);
  CHECK(is_global_approx(cs, target).holds);
}

TEST_CASE("grade checks: the per-case semantics is local but not global") {
  LoadedSemantics ls = load_semantics_file(data_path("powsem.sem"));
  Interpretation interp = ls.workspace.interpretation("interp");
  ProvenanceGraph target_graph = load_graph("pow_target.json");

  BlackBoxFunction f = BlackBoxFunction::from_model(load_model("pow.model"), "r");
  CHECK(is_pointwise_approx(ls.semantics, f).holds);
  CheckResult fg = is_global_approx(ls.semantics, f);
  CHECK_FALSE(fg.holds);
  CHECK(fg.str() == "fails: at u=(0, 0, 0), u'=(1, 0, 0): result: expected 0, got 1");

  CausalSemantics cs = CausalSemantics::of_graph_semantics(ls.semantics);
  CausalFunction target(graph_model(target_graph, interp, false));
  CHECK(is_pointwise_approx(cs, target).holds);
  CHECK(is_local_approx(cs, target).holds);
  CheckResult cg = is_global_approx(cs, target);
  CHECK_FALSE(cg.holds);
  CHECK(cg.str() == "fails: at u=(0, 0, 0), u'=(1, 0, 0), tau=[]: pr: expected 0, got 1");
}

TEST_CASE("a model's own causal reading approximates it at every grade") {
  for (const char* name : {"orgate.model", "chain.model", "pow.model"}) {
    CausalModel m = load_model(name);
    CausalSemantics self = CausalSemantics::fixed_model(m, name);
    CausalFunction target((CausalModel(m)));
    CHECK(is_pointwise_approx(self, target).holds);
    CHECK(is_local_approx(self, target).holds);
    CHECK(is_global_approx(self, target).holds);
  }
  // the two larger models stay at the local grade to keep runtime sane
  for (const char* name : {"cake.model", "divzero.model"}) {
    CausalModel m = load_model(name);
    CausalSemantics self = CausalSemantics::fixed_model(m, name);
    CausalFunction target((CausalModel(m)));
    CHECK(is_local_approx(self, target, 1).holds);
  }
}

TEST_CASE("predictive power of the per-case semantics, frozen") {
  LoadedSemantics ls = load_semantics_file(data_path("powsem.sem"));
  Interpretation interp = ls.workspace.interpretation("interp");

  CausalSemantics cs = CausalSemantics::of_graph_semantics(ls.semantics);
  CausalFunction target(graph_model(load_graph("pow_target.json"), interp, false));
  PredictivePowerRelation causal = predictive_power(cs, target);
  CHECK(causal.pair_count() == 3125);
  CHECK(causal.is_reflexive());
  CHECK_FALSE(causal.is_total());
  CHECK(causal.stats() ==
        "reflexive: yes\n"
        "total:     no\n"
        "related:   3125 of 15625 pairs (density 0.2000)\n");
  // block-diagonal: u ~> u' exactly when they run the same case
  const InputSpace space = cs.space();
  for (std::uint64_t i = 0; i < space.size(); i += 11)
    for (std::uint64_t j = 0; j < space.size(); j += 7) {
      bool same_case = ls.semantics.case_index_for(space.tuple_at(i)) ==
                       ls.semantics.case_index_for(space.tuple_at(j));
      CHECK(causal.related(i, j) == same_case);
    }

  BlackBoxFunction f = BlackBoxFunction::from_model(load_model("pow.model"), "r");
  PredictivePowerRelation functional = predictive_power(ls.semantics, f);
  CHECK(functional.pair_count() == 8625);
  CHECK(functional.is_reflexive());
  CHECK_FALSE(functional.is_total());
  // the causal relation is the stricter one
  CHECK(compare_power(causal, functional) == PowerOrdering::LessOrEqual);

  CHECK_THROWS_AS(predictive_power(cs, target, -1, 100), Error);
  CHECK_THROWS_AS(predictive_power(ls.semantics, f, 100), Error);
}

TEST_CASE("predictive power separates the trivial and exact chain semantics") {
  LoadedSemantics trivial = load_semantics_file(data_path("chainconst.sem"));
  LoadedSemantics exact = load_semantics_file(data_path("chain_exact.sem"));
  Interpretation interp = trivial.workspace.interpretation("interp");
  BlackBoxFunction f = BlackBoxFunction::from_graph(trivial.workspace.graph("chain"), interp);

  PredictivePowerRelation weak = predictive_power(trivial.semantics, f);
  PredictivePowerRelation strong = predictive_power(exact.semantics, f);

  // x -> 2(x+1) mod 7 is injective, so the constant semantics predicts
  // exactly its own input
  CHECK(weak.pair_count() == 7);
  CHECK(weak.is_reflexive());
  CHECK_FALSE(weak.is_total());
  CHECK(weak.dump() ==
        "(0) ~> (0)\n(1) ~> (1)\n(2) ~> (2)\n(3) ~> (3)\n(4) ~> (4)\n(5) ~> (5)\n(6) ~> (6)\n");

  CHECK(strong.pair_count() == 49);
  CHECK(strong.is_total());
  CHECK(strong.density() == 1.0);

  CHECK(compare_power(weak, strong) == PowerOrdering::LessOrEqual);
  CHECK(compare_power(strong, weak) == PowerOrdering::GreaterOrEqual);
  CHECK(compare_power(weak, weak) == PowerOrdering::Equal);
  CHECK(std::string(power_ordering_name(PowerOrdering::LessOrEqual)) == "less-or-equal");
}

TEST_CASE("power comparison detects incomparable relations") {
  InputSpace space(Domain::boolean(), 1);
  PredictivePowerRelation left(space, {true, false, false, false});   // only 0 ~> 0
  PredictivePowerRelation right(space, {false, false, false, true});  // only 1 ~> 1
  CHECK(compare_power(left, right) == PowerOrdering::Incomparable);
  CHECK(compare_power(left, left) == PowerOrdering::Equal);

  InputSpace other(Domain::boolean(), 2);
  PredictivePowerRelation wrong_space(other, std::vector<bool>(16, false));
  CHECK_THROWS_AS(compare_power(left, wrong_space), Error);
}

TEST_CASE("reflexivity and totality mirror the grade checks on every bundled semantics") {
  struct Pairing {
    const char* sem_file;
    const char* graph_target;
  };
  for (Pairing p : {Pairing{"chainconst.sem", "chain"}, Pairing{"chain_exact.sem", "chain"}}) {
    LoadedSemantics ls = load_semantics_file(data_path(p.sem_file));
    Interpretation interp = ls.workspace.interpretation("interp");
    ProvenanceGraph g = ls.workspace.graph(p.graph_target);

    BlackBoxFunction f = BlackBoxFunction::from_graph(g, interp);
    PredictivePowerRelation rel = predictive_power(ls.semantics, f);
    CHECK(rel.is_reflexive() == is_pointwise_approx(ls.semantics, f).holds);
    CHECK(rel.is_total() == is_global_approx(ls.semantics, f).holds);

    CausalSemantics cs = CausalSemantics::of_graph_semantics(ls.semantics);
    CausalFunction target(graph_model(g, interp, false));
    PredictivePowerRelation crel = predictive_power(cs, target);
    CHECK(crel.is_reflexive() == is_local_approx(cs, target).holds);
    CHECK(crel.is_total() == is_global_approx(cs, target).holds);
  }
}
