#include "causeway/expression.hpp"

#include <algorithm>

#include "causeway/error.hpp"

namespace causeway {

namespace {

struct OpInfo {
  Op op;
  const char* name;
  OpArity arity;
};

constexpr OpInfo kOps[] = {
    {Op::And, "and", {1, -1}}, {Op::Or, "or", {1, -1}},   {Op::Not, "not", {1, 1}},
    {Op::Xor, "xor", {1, -1}}, {Op::Add, "add", {1, -1}}, {Op::Sub, "sub", {2, 2}},
    {Op::Mul, "mul", {1, -1}}, {Op::Div, "div", {2, 2}},  {Op::Pow, "pow", {2, 2}},
    {Op::Eq, "eq", {2, 2}},    {Op::Ite, "ite", {3, 3}},
};

bool truthy(Value v) { return v.ordinary() != 0; }

int mod_norm(long long x, int m) {
  long long r = x % m;
  if (r < 0) r += m;
  return static_cast<int>(r);
}

int mod_pow(int base, int exp, int m) {
  long long acc = 1 % m;
  long long b = mod_norm(base, m);
  for (int e = exp; e > 0; e >>= 1) {
    if (e & 1) acc = (acc * b) % m;
    b = (b * b) % m;
  }
  return static_cast<int>(acc);
}

}  // namespace

const char* op_name(Op op) {
  for (const OpInfo& info : kOps)
    if (info.op == op) return info.name;
  return "?";
}

std::optional<Op> op_from_name(std::string_view name) {
  for (const OpInfo& info : kOps)
    if (name == info.name) return info.op;
  return std::nullopt;
}

OpArity op_arity(Op op) {
  for (const OpInfo& info : kOps)
    if (info.op == op) return info.arity;
  return {0, -1};
}

Value apply_op(Op op, std::span<const Value> args, const Domain& dom) {
  const OpArity arity = op_arity(op);
  const int n = static_cast<int>(args.size());
  if (n < arity.min || (arity.max >= 0 && n > arity.max))
    throw Error(std::string("operator '") + op_name(op) + "' applied to " +
                std::to_string(n) + " arguments");

  // Every built-in is strict in bottom.
  for (Value v : args)
    if (v.is_bottom()) return Value::bottom();

  const int m = dom.modulus();
  switch (op) {
    case Op::And: {
      for (Value v : args)
        if (!truthy(v)) return Value::of(0);
      return Value::of(1);
    }
    case Op::Or: {
      for (Value v : args)
        if (truthy(v)) return Value::of(1);
      return Value::of(0);
    }
    case Op::Not:
      return Value::of(truthy(args[0]) ? 0 : 1);
    case Op::Xor: {
      int parity = 0;
      for (Value v : args) parity ^= truthy(v) ? 1 : 0;
      return Value::of(parity);
    }
    case Op::Add: {
      long long acc = 0;
      for (Value v : args) acc += v.ordinary();
      return Value::of(mod_norm(acc, m));
    }
    case Op::Sub:
      return Value::of(mod_norm(static_cast<long long>(args[0].ordinary()) - args[1].ordinary(), m));
    case Op::Mul: {
      long long acc = 1;
      for (Value v : args) acc = mod_norm(acc * v.ordinary(), m);
      return Value::of(static_cast<int>(acc));
    }
    case Op::Div: {
      // Truncated division of the canonical representatives; the quotient is
      // always another representative. Dividing by zero has no value.
      if (args[1].ordinary() == 0) {
        if (dom.has_bottom()) return Value::bottom();
        throw EvalError("division by zero in a domain without bottom");
      }
      return Value::of(args[0].ordinary() / args[1].ordinary());
    }
    case Op::Pow:
      return Value::of(mod_pow(args[0].ordinary(), args[1].ordinary(), m));
    case Op::Eq:
      return Value::of(args[0] == args[1] ? 1 : 0);
    case Op::Ite:
      return truthy(args[0]) ? args[1] : args[2];
  }
  throw Error("unhandled operator");
}

// ---------------------------------------------------------------------------
// LookupTable
// ---------------------------------------------------------------------------

namespace {

std::size_t table_size(int arity, const Domain& dom) {
  std::size_t n = 1;
  for (int i = 0; i < arity; ++i) n *= dom.size();
  return n;
}

}  // namespace

LookupTable::LookupTable(int arity, const Domain& domain, std::vector<Value> dense)
    : arity_(arity), domain_(domain), dense_(std::move(dense)) {
  if (arity_ < 0) throw Error("lookup table arity must be non-negative");
  if (dense_.size() != table_size(arity_, domain_))
    throw Error("lookup table is not total: expected " +
                std::to_string(table_size(arity_, domain_)) + " rows, got " +
                std::to_string(dense_.size()));
  for (Value v : dense_)
    if (!domain_.contains(v))
      throw Error("lookup table output " + v.str() + " not in domain " + domain_.str());
}

LookupTable LookupTable::from_rows(
    int arity, const Domain& domain,
    const std::vector<std::pair<std::vector<Value>, Value>>& rows) {
  const std::size_t need = table_size(arity, domain);
  std::vector<Value> dense(need, Value::of(0));
  std::vector<bool> seen(need, false);
  for (const auto& [key, out] : rows) {
    if (static_cast<int>(key.size()) != arity)
      throw Error("lookup table row has " + std::to_string(key.size()) +
                  " inputs, expected " + std::to_string(arity));
    std::size_t idx = 0;
    for (Value v : key) idx = idx * domain.size() + domain.ordinal(v);
    if (seen[idx]) throw Error("duplicate lookup table row");
    seen[idx] = true;
    dense[idx] = out;
  }
  for (std::size_t i = 0; i < need; ++i)
    if (!seen[i])
      throw Error("lookup table is not total: " + std::to_string(need - std::count(seen.begin(), seen.end(), true)) +
                  " of " + std::to_string(need) + " rows missing");
  return LookupTable(arity, domain, std::move(dense));
}

Value LookupTable::at(std::span<const Value> key) const {
  if (static_cast<int>(key.size()) != arity_)
    throw Error("lookup table applied to " + std::to_string(key.size()) +
                " arguments, expected " + std::to_string(arity_));
  std::size_t idx = 0;
  for (Value v : key) idx = idx * domain_.size() + domain_.ordinal(v);
  return dense_[idx];
}

// ---------------------------------------------------------------------------
// Expression
// ---------------------------------------------------------------------------

Expression Expression::variable(std::string name) {
  Expression e;
  e.kind_ = Kind::Variable;
  e.name_ = std::move(name);
  return e;
}

Expression Expression::constant(Value v) {
  Expression e;
  e.kind_ = Kind::Constant;
  e.value_ = v;
  return e;
}

Expression Expression::apply(Op op, std::vector<Expression> args) {
  const OpArity arity = op_arity(op);
  const int n = static_cast<int>(args.size());
  if (n < arity.min || (arity.max >= 0 && n > arity.max))
    throw Error(std::string("operator '") + op_name(op) + "' takes " +
                (arity.max < 0 ? "at least " + std::to_string(arity.min)
                               : arity.min == arity.max
                                     ? "exactly " + std::to_string(arity.min)
                                     : std::to_string(arity.min) + ".." + std::to_string(arity.max)) +
                " arguments, got " + std::to_string(n));
  Expression e;
  e.kind_ = Kind::Apply;
  e.op_ = op;
  e.args_ = std::move(args);
  return e;
}

Expression Expression::table(std::shared_ptr<const LookupTable> table,
                             std::vector<Expression> args) {
  if (!table) throw Error("null lookup table");
  if (static_cast<int>(args.size()) != table->arity())
    throw Error("lookup table of arity " + std::to_string(table->arity()) +
                " applied to " + std::to_string(args.size()) + " arguments");
  Expression e;
  e.kind_ = Kind::Table;
  e.table_ = std::move(table);
  e.args_ = std::move(args);
  return e;
}

void Expression::collect_variables(std::set<std::string>& out) const {
  if (kind_ == Kind::Variable) {
    out.insert(name_);
    return;
  }
  for (const Expression& a : args_) a.collect_variables(out);
}

std::set<std::string> Expression::variables() const {
  std::set<std::string> out;
  collect_variables(out);
  return out;
}

std::string Expression::str() const {
  switch (kind_) {
    case Kind::Variable:
      return name_;
    case Kind::Constant:
      return value_.str();
    case Kind::Apply: {
      std::string s = op_name(op_);
      s += '(';
      for (std::size_t i = 0; i < args_.size(); ++i) {
        if (i) s += ", ";
        s += args_[i].str();
      }
      s += ')';
      return s;
    }
    case Kind::Table: {
      // Tables have no inline syntax; they round-trip through the table
      // declaration form instead.
      std::string s = "table(";
      for (std::size_t i = 0; i < args_.size(); ++i) {
        if (i) s += ", ";
        s += args_[i].str();
      }
      s += ')';
      return s;
    }
  }
  return "?";
}

bool Expression::operator==(const Expression& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::Variable:
      return name_ == other.name_;
    case Kind::Constant:
      return value_ == other.value_;
    case Kind::Apply:
      if (op_ != other.op_) return false;
      break;
    case Kind::Table:
      if (!(*table_ == *other.table_)) return false;
      break;
  }
  return args_ == other.args_;
}

}  // namespace causeway
