#ifndef CAUSEWAY_EXPRESSION_HPP
#define CAUSEWAY_EXPRESSION_HPP

#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "causeway/domain.hpp"

namespace causeway {

// Built-in operators. Logical ones treat 0 as false and anything else as
// true and return 0/1; arithmetic is modular. All of them are strict in
// bottom (any bottom argument yields bottom), including ite.
enum class Op { And, Or, Not, Xor, Add, Sub, Mul, Div, Pow, Eq, Ite };

const char* op_name(Op op);
std::optional<Op> op_from_name(std::string_view name);

// Allowed argument counts; max < 0 means variadic.
struct OpArity {
  int min;
  int max;
};
OpArity op_arity(Op op);

Value apply_op(Op op, std::span<const Value> args, const Domain& dom);

// A total map from k-tuples of domain values to domain values, stored as a
// dense table indexed by domain ordinals (leftmost argument most significant).
class LookupTable {
 public:
  LookupTable(int arity, const Domain& domain, std::vector<Value> dense);

  // Builds from explicit rows, checking totality and rejecting duplicates.
  static LookupTable from_rows(
      int arity, const Domain& domain,
      const std::vector<std::pair<std::vector<Value>, Value>>& rows);

  int arity() const { return arity_; }
  const Domain& domain() const { return domain_; }
  Value at(std::span<const Value> key) const;
  const std::vector<Value>& dense() const { return dense_; }

  friend bool operator==(const LookupTable& a, const LookupTable& b) {
    return a.arity_ == b.arity_ && a.domain_ == b.domain_ && a.dense_ == b.dense_;
  }

 private:
  int arity_;
  Domain domain_;
  std::vector<Value> dense_;
};

// An expression tree: variable references, constants, built-in operator
// applications, and lookup-table applications.
class Expression {
 public:
  enum class Kind { Variable, Constant, Apply, Table };

  static Expression variable(std::string name);
  static Expression constant(Value v);
  static Expression apply(Op op, std::vector<Expression> args);
  static Expression table(std::shared_ptr<const LookupTable> table,
                          std::vector<Expression> args);

  Kind kind() const { return kind_; }
  const std::string& variable_name() const { return name_; }
  Value constant_value() const { return value_; }
  Op op() const { return op_; }
  const std::vector<Expression>& args() const { return args_; }
  const LookupTable& lookup() const { return *table_; }
  std::shared_ptr<const LookupTable> lookup_ptr() const { return table_; }

  void collect_variables(std::set<std::string>& out) const;
  std::set<std::string> variables() const;

  // Direct evaluation with a name-based environment. The compiled form in
  // CausalModel is what hot paths use; this one serves interpretation
  // functions and small callers.
  template <typename Env>  // Env: Value(const std::string&)
  Value eval(const Env& env, const Domain& dom) const;

  // Prefix form, e.g. "xor(and(Water, Sugar), U1)"; parses back to an equal tree.
  std::string str() const;

  bool operator==(const Expression& other) const;

 private:
  Expression() = default;

  Kind kind_ = Kind::Constant;
  std::string name_;
  Value value_;
  Op op_ = Op::And;
  std::vector<Expression> args_;
  std::shared_ptr<const LookupTable> table_;
};

template <typename Env>
Value Expression::eval(const Env& env, const Domain& dom) const {
  switch (kind_) {
    case Kind::Variable:
      return env(name_);
    case Kind::Constant:
      return value_;
    case Kind::Apply: {
      std::vector<Value> vals;
      vals.reserve(args_.size());
      for (const Expression& a : args_) vals.push_back(a.eval(env, dom));
      return apply_op(op_, vals, dom);
    }
    case Kind::Table: {
      std::vector<Value> vals;
      vals.reserve(args_.size());
      for (const Expression& a : args_) vals.push_back(a.eval(env, dom));
      return table_->at(vals);
    }
  }
  return Value::of(0);  // unreachable
}

}  // namespace causeway

#endif
