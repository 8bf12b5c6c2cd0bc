#include <cstdlib>
#include <set>

#include "causeway/cause.hpp"
#include "causeway/error.hpp"
#include "causeway/graph_json.hpp"
#include "causeway/text_format.hpp"
#include "causeway/workspace.hpp"
#include "data_path.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace causeway;
using causeway::testing::all_tuples;
using causeway::testing::data_path;
using causeway::testing::naive_actual_causes;
using causeway::testing::naive_weak_cause;

namespace {

CausalSituation load_model_situation(const std::string& file, const Valuation& exo) {
  return CausalSituation::from_exogenous(parse_model(read_file(data_path(file))), exo);
}

std::set<std::vector<std::pair<std::string, Value>>> cause_sets(
    const std::vector<WitnessedCause>& found) {
  std::set<std::vector<std::pair<std::string, Value>>> out;
  for (const WitnessedCause& w : found) out.insert(w.query.cause);
  return out;
}

}  // namespace

TEST_CASE("or-gate overdetermination: both inputs cause, the pair does not") {
  CausalSituation sit = load_model_situation("orgate.model", Valuation{});
  std::vector<WitnessedCause> causes = actual_causes(sit, "Y", Value::of(1), 3);

  REQUIRE(causes.size() == 2);
  CHECK(causes[0].str() == "A=1 causes Y=1 [W={B=0}, x'=(0)]");
  CHECK(causes[1].str() == "B=1 causes Y=1 [W={A=0}, x'=(0)]");
  for (const WitnessedCause& w : causes) {
    CHECK(w.query.cause.size() == 1);
    CHECK_FALSE(w.contingency.empty());  // neither input flips the gate on its own
    CHECK(w.kind == WitnessedCause::Kind::Actual);
    CHECK(replay_witness(sit, w));
  }

  // the pair passes the counterfactual test but is not minimal
  CauseQuery pair{{{"A", Value::of(1)}, {"B", Value::of(1)}}, "Y", Value::of(1)};
  auto weak = is_weak_cause(sit, pair);
  REQUIRE(weak.has_value());
  CHECK(weak->contingency.empty());
  CHECK(replay_witness(sit, *weak));
  CHECK(cause_sets(causes).count(pair.cause) == 0);
}

TEST_CASE("queries with non-actual values have no witness") {
  CausalSituation sit = load_model_situation("orgate.model", Valuation{});
  CHECK_FALSE(is_weak_cause(sit, {{{"A", Value::of(0)}}, "Y", Value::of(1)}).has_value());
  CHECK_FALSE(is_weak_cause(sit, {{{"A", Value::of(1)}}, "Y", Value::of(0)}).has_value());
}

TEST_CASE("malformed queries are rejected") {
  CausalSituation sit = load_model_situation("orgate.model", Valuation{});
  CHECK_THROWS_WITH_AS(is_weak_cause(sit, {{}, "Y", Value::of(1)}),
                       "cause candidate set must not be empty", Error);
  CHECK_THROWS_WITH_AS(
      is_weak_cause(sit, {{{"Y", Value::of(1)}}, "Y", Value::of(1)}),
      "effect cannot appear among the cause variables", Error);
  CHECK_THROWS_AS(is_weak_cause(sit, {{{"Q", Value::of(1)}}, "Y", Value::of(1)}), Error);
  CHECK_THROWS_AS(actual_causes(sit, "Y", Value::of(1), 0), Error);
  CHECK_THROWS_AS(actual_causes(sit, "nope", Value::of(1), 3), Error);
}

TEST_CASE("conjunctive chain: every link is a singleton cause with empty contingency") {
  // all ingredients present, no error terms firing
  Valuation exo;
  for (const char* u : {"Water", "Sugar", "Eggs", "Flour", "Butter", "Pan"})
    exo.set(u, Value::of(1));
  for (const char* u : {"U1", "U2", "U3", "U4"}) exo.set(u, Value::of(0));
  CausalSituation sit = load_model_situation("cake.model", exo);

  std::vector<WitnessedCause> causes = actual_causes(sit, "Cake", Value::of(1), 3);
  auto sets = cause_sets(causes);
  CHECK(sets == std::set<std::vector<std::pair<std::string, Value>>>{
                    {{"Bake", Value::of(1)}},
                    {{"Batter", Value::of(1)}},
                    {{"Mix", Value::of(1)}}});
  for (const WitnessedCause& w : causes) {
    CHECK(w.contingency.empty());
    CHECK(replay_witness(sit, w));
  }
}

TEST_CASE("cause search agrees with the naive reference on whole models") {
  struct Scenario {
    const char* file;
    std::size_t max_situations;
  };
  for (Scenario sc : {Scenario{"orgate.model", 1}, Scenario{"chain.model", 7},
                      Scenario{"pow.model", 16}, Scenario{"divzero.model", 16}}) {
    CausalModel m = parse_model(read_file(data_path(sc.file)));
    auto tuples = all_tuples(m.domain(), static_cast<int>(m.exogenous().size()));
    std::size_t stride = tuples.size() > sc.max_situations ? tuples.size() / sc.max_situations : 1;
    for (std::size_t i = 0; i < tuples.size(); i += stride) {
      Valuation exo;
      for (std::size_t k = 0; k < m.exogenous().size(); ++k)
        exo.set(m.exogenous()[k], tuples[i][k]);
      CausalSituation sit = CausalSituation::from_exogenous(m, exo);
      for (const std::string& effect : m.endogenous()) {
        Value y = sit.actual(effect);
        auto engine = cause_sets(actual_causes(sit, effect, y, 3));
        auto oracle = naive_actual_causes(sit, effect, y, 3);
        CHECK(engine == oracle);
      }
    }
  }
}

TEST_CASE("weak-cause verdicts agree with the naive reference on the cake model") {
  CausalModel m = parse_model(read_file(data_path("cake.model")));
  auto tuples = all_tuples(m.domain(), 10);
  for (std::size_t i = 0; i < tuples.size(); i += 128) {
    Valuation exo;
    for (std::size_t k = 0; k < 10; ++k) exo.set(m.exogenous()[k], tuples[i][k]);
    CausalSituation sit = CausalSituation::from_exogenous(m, exo);
    for (const std::string& effect : m.endogenous()) {
      Value y = sit.actual(effect);
      for (const std::string& cand : m.endogenous()) {
        if (cand == effect) continue;
        CauseQuery q{{{cand, sit.actual(cand)}}, effect, y};
        auto engine = is_weak_cause(sit, q);
        CHECK(engine.has_value() == naive_weak_cause(sit, q.cause, effect, y));
        if (engine) CHECK(replay_witness(sit, *engine));
      }
    }
  }
}

TEST_CASE("a value-destroying process is still a cause of its output") {
  // y is constantly 0, yet the process node ann counts as a cause of y = 0:
  // flipping ann's value flips y directly
  ProvenanceGraph g = parse_graph(read_file(data_path("vacuous.json")));
  Interpretation interp = parse_interpretation(read_file(data_path("vacuous.interp")));
  CausalSituation sit = to_causal_situation(g, interp, true);
  CHECK(sit.actual("y") == Value::of(0));

  CHECK(is_weak_cause(sit, {{{"ann", Value::of(0)}}, "y", Value::of(0)}).has_value());
  // but the input artifact x is not: no setting of x moves y
  CHECK_FALSE(is_weak_cause(sit, {{{"x", Value::of(1)}}, "y", Value::of(0)}).has_value());
  CHECK_FALSE(naive_weak_cause(sit, {{"x", Value::of(1)}}, "y", Value::of(0)));

  auto sets = cause_sets(actual_causes(sit, "y", Value::of(0), 3));
  CHECK(sets == std::set<std::vector<std::pair<std::string, Value>>>{{{"ann", Value::of(0)}}});
}

TEST_CASE("part-of-cause index matches the point queries") {
  CausalSituation sit = load_model_situation("orgate.model", Valuation{});
  PartOfCauseIndex index(sit, 3);
  CHECK(index.part_of("A", "Y"));
  CHECK(index.part_of("B", "Y"));
  CHECK_FALSE(index.part_of("Y", "Y"));
  CHECK_FALSE(index.part_of("Y", "A"));
  CHECK(index.cause_members("Y") == std::set<std::string>{"A", "B"});
  for (const std::string& var : sit.model().endogenous())
    for (const std::string& effect : sit.model().endogenous()) {
      if (var == effect) continue;
      CHECK(index.part_of(var, effect) ==
            is_part_of_cause(sit, var, sit.actual(var), effect, sit.actual(effect), 3));
    }
}

TEST_CASE("default cause-size bound reads the environment") {
  CHECK(default_max_cause_size() == 3);
  setenv("CAUSEWAY_MAX_CAUSE_SIZE", "5", 1);
  CHECK(default_max_cause_size() == 5);
  setenv("CAUSEWAY_MAX_CAUSE_SIZE", "junk", 1);
  CHECK(default_max_cause_size() == 3);
  setenv("CAUSEWAY_MAX_CAUSE_SIZE", "-2", 1);
  CHECK(default_max_cause_size() == 3);
  unsetenv("CAUSEWAY_MAX_CAUSE_SIZE");
  CHECK(default_max_cause_size() == 3);
}
