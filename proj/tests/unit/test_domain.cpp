#include <vector>

#include "causeway/domain.hpp"
#include "causeway/error.hpp"
#include "causeway/expression.hpp"
#include "doctest.h"

using namespace causeway;

namespace {

Value apply(Op op, std::vector<Value> args, const Domain& dom) {
  return apply_op(op, args, dom);
}

const Value v0 = Value::of(0);
const Value v1 = Value::of(1);
const Value bot = Value::bottom();

}  // namespace

TEST_CASE("values order with bottom last") {
  CHECK(v0 < v1);
  CHECK(v1 < bot);
  CHECK(v0.str() == "0");
  CHECK(bot.str() == "bot");
  CHECK(bot.is_bottom());
  CHECK_FALSE(v1.is_bottom());
}

TEST_CASE("domains enumerate canonically") {
  Domain b = Domain::boolean();
  CHECK(b.size() == 2);
  CHECK(b.str() == "bool");
  CHECK(b.is_boolean());
  CHECK_FALSE(b.contains(Value::of(2)));
  CHECK_FALSE(b.contains(bot));

  Domain m7b = Domain::modular(7, true);
  CHECK(m7b.size() == 8);
  CHECK(m7b.str() == "mod 7 with bottom");
  CHECK(m7b.elements().back() == bot);
  CHECK(m7b.ordinal(bot) == 7);
  CHECK(m7b.ordinal(Value::of(3)) == 3);
  CHECK(m7b.contains(bot));

  CHECK(Domain::boolean(true).str() == "bool with bottom");
  CHECK_THROWS_AS(Domain::modular(1), Error);
}

TEST_CASE("operator arities") {
  for (Op op : {Op::And, Op::Or, Op::Xor, Op::Add, Op::Sub, Op::Mul}) (void)op;
  CHECK(op_arity(Op::And).min == 1);
  CHECK(op_arity(Op::And).max == -1);
  CHECK(op_arity(Op::Or).max == -1);
  CHECK(op_arity(Op::Xor).max == -1);
  CHECK(op_arity(Op::Add).max == -1);
  CHECK(op_arity(Op::Mul).max == -1);
  CHECK(op_arity(Op::Not).min == 1);
  CHECK(op_arity(Op::Not).max == 1);
  CHECK(op_arity(Op::Sub).min == 2);
  CHECK(op_arity(Op::Sub).max == 2);
  CHECK(op_arity(Op::Div).min == 2);
  CHECK(op_arity(Op::Pow).max == 2);
  CHECK(op_arity(Op::Eq).max == 2);
  CHECK(op_arity(Op::Ite).min == 3);
  CHECK(op_arity(Op::Ite).max == 3);
}

TEST_CASE("operator names round-trip") {
  for (Op op : {Op::And, Op::Or, Op::Not, Op::Xor, Op::Add, Op::Sub, Op::Mul, Op::Div, Op::Pow,
                Op::Eq, Op::Ite}) {
    CHECK(op_from_name(op_name(op)) == op);
  }
  CHECK_FALSE(op_from_name("frobnicate").has_value());
}

TEST_CASE("boolean operators on a boolean domain") {
  Domain b = Domain::boolean();
  CHECK(apply(Op::And, {v1, v1, v1}, b) == v1);
  CHECK(apply(Op::And, {v1, v0, v1}, b) == v0);
  CHECK(apply(Op::Or, {v0, v0}, b) == v0);
  CHECK(apply(Op::Or, {v0, v1}, b) == v1);
  CHECK(apply(Op::Not, {v0}, b) == v1);
  CHECK(apply(Op::Not, {v1}, b) == v0);
  CHECK(apply(Op::Xor, {v1, v1, v1}, b) == v1);
  CHECK(apply(Op::Xor, {v1, v1}, b) == v0);
  CHECK(apply(Op::Eq, {v1, v1}, b) == v1);
  CHECK(apply(Op::Eq, {v0, v1}, b) == v0);
  CHECK(apply(Op::Ite, {v1, v0, v1}, b) == v0);
  CHECK(apply(Op::Ite, {v0, v0, v1}, b) == v1);
}

TEST_CASE("logical operators treat nonzero as true on modular domains") {
  Domain m7 = Domain::modular(7);
  CHECK(apply(Op::And, {Value::of(3), Value::of(5)}, m7) == v1);
  CHECK(apply(Op::Or, {Value::of(0), Value::of(6)}, m7) == v1);
  CHECK(apply(Op::Not, {Value::of(4)}, m7) == v0);
  CHECK(apply(Op::Xor, {Value::of(2), Value::of(3)}, m7) == v0);  // true xor true
  CHECK(apply(Op::Eq, {Value::of(4), Value::of(4)}, m7) == v1);
}

TEST_CASE("modular arithmetic wraps") {
  Domain m7 = Domain::modular(7);
  CHECK(apply(Op::Add, {Value::of(5), Value::of(4)}, m7) == Value::of(2));
  CHECK(apply(Op::Add, {Value::of(6)}, m7) == Value::of(6));  // unary add
  CHECK(apply(Op::Sub, {Value::of(2), Value::of(5)}, m7) == Value::of(4));
  CHECK(apply(Op::Mul, {Value::of(3), Value::of(5)}, m7) == Value::of(1));
  CHECK(apply(Op::Pow, {Value::of(3), Value::of(4)}, m7) == Value::of(4));  // 81 mod 7
  CHECK(apply(Op::Pow, {Value::of(0), Value::of(0)}, m7) == Value::of(1));
  CHECK(apply(Op::Pow, {Value::of(0), Value::of(3)}, m7) == Value::of(0));
}

TEST_CASE("division truncates on the representatives") {
  Domain m7 = Domain::modular(7);
  CHECK(apply(Op::Div, {Value::of(6), Value::of(2)}, m7) == Value::of(3));
  CHECK(apply(Op::Div, {Value::of(3), Value::of(5)}, m7) == Value::of(0));
  CHECK(apply(Op::Div, {Value::of(6), Value::of(1)}, m7) == Value::of(6));
  CHECK(apply(Op::Div, {Value::of(0), Value::of(4)}, m7) == Value::of(0));
}

TEST_CASE("division by zero needs bottom") {
  Domain m7 = Domain::modular(7);
  Domain m7b = Domain::modular(7, true);
  CHECK(apply(Op::Div, {Value::of(3), Value::of(0)}, m7b) == bot);
  CHECK_THROWS_AS(apply(Op::Div, {Value::of(3), Value::of(0)}, m7), EvalError);
}

TEST_CASE("every operator is strict in bottom") {
  Domain bb = Domain::boolean(true);
  Domain m7b = Domain::modular(7, true);
  CHECK(apply(Op::And, {v0, bot}, bb) == bot);  // even though 0 short-circuits classically
  CHECK(apply(Op::Or, {v1, bot}, bb) == bot);
  CHECK(apply(Op::Not, {bot}, bb) == bot);
  CHECK(apply(Op::Xor, {bot, v1}, bb) == bot);
  CHECK(apply(Op::Add, {bot, Value::of(2)}, m7b) == bot);
  CHECK(apply(Op::Sub, {Value::of(2), bot}, m7b) == bot);
  CHECK(apply(Op::Mul, {Value::of(0), bot}, m7b) == bot);
  CHECK(apply(Op::Div, {bot, Value::of(2)}, m7b) == bot);
  CHECK(apply(Op::Pow, {bot, Value::of(0)}, m7b) == bot);
  CHECK(apply(Op::Eq, {bot, bot}, m7b) == bot);
  CHECK(apply(Op::Ite, {v1, Value::of(5), bot}, m7b) == bot);  // untaken branch still poisons
  CHECK(apply(Op::Ite, {bot, Value::of(5), Value::of(5)}, m7b) == bot);
}

TEST_CASE("lookup tables check totality and duplicates") {
  Domain b = Domain::boolean();
  std::vector<std::pair<std::vector<Value>, Value>> rows = {
      {{v0, v0}, v0}, {{v0, v1}, v1}, {{v1, v0}, v1}, {{v1, v1}, v0}};
  LookupTable t = LookupTable::from_rows(2, b, rows);
  CHECK(t.at(std::vector<Value>{v1, v1}) == v0);
  CHECK(t.at(std::vector<Value>{v0, v1}) == v1);
  CHECK(t.dense().size() == 4);

  rows.pop_back();
  CHECK_THROWS_AS(LookupTable::from_rows(2, b, rows), Error);  // missing a row
  rows.push_back({{v0, v0}, v1});
  CHECK_THROWS_AS(LookupTable::from_rows(2, b, rows), Error);  // duplicate key
}
