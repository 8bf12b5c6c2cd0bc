#include "causeway/text_format.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "causeway/error.hpp"

namespace causeway {

namespace {

// ---------------------------------------------------------------------------
// line lexer
// ---------------------------------------------------------------------------

struct Token {
  enum class K { Ident, Int, LParen, RParen, LBrace, RBrace, Comma, Semi, Assign, Arrow, End };
  K kind;
  std::string text;
  int number = 0;
  int line = 1;
  int col = 1;
};

const char* token_desc(Token::K k) {
  switch (k) {
    case Token::K::Ident: return "a name";
    case Token::K::Int: return "a number";
    case Token::K::LParen: return "'('";
    case Token::K::RParen: return "')'";
    case Token::K::LBrace: return "'{'";
    case Token::K::RBrace: return "'}'";
    case Token::K::Comma: return "','";
    case Token::K::Semi: return "';'";
    case Token::K::Assign: return "':='";
    case Token::K::Arrow: return "'->'";
    case Token::K::End: return "end of line";
  }
  return "?";
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

std::vector<Token> tokenize_line(int line_no, const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    int col = static_cast<int>(i) + 1;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '#') break;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j])) ++j;
      out.push_back({Token::K::Ident, line.substr(i, j - i), 0, line_no, col});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      std::string digits = line.substr(i, j - i);
      if (digits.size() > 9) throw ParseError(line_no, col, "number too large");
      out.push_back({Token::K::Int, digits, std::stoi(digits), line_no, col});
      i = j;
      continue;
    }
    auto single = [&](Token::K k) {
      out.push_back({k, std::string(1, c), 0, line_no, col});
      ++i;
    };
    switch (c) {
      case '(': single(Token::K::LParen); continue;
      case ')': single(Token::K::RParen); continue;
      case '{': single(Token::K::LBrace); continue;
      case '}': single(Token::K::RBrace); continue;
      case ',': single(Token::K::Comma); continue;
      case ';': single(Token::K::Semi); continue;
      case ':':
        if (i + 1 < line.size() && line[i + 1] == '=') {
          out.push_back({Token::K::Assign, ":=", 0, line_no, col});
          i += 2;
          continue;
        }
        throw ParseError(line_no, col, "expected ':=' after ':'");
      case '-':
        if (i + 1 < line.size() && line[i + 1] == '>') {
          out.push_back({Token::K::Arrow, "->", 0, line_no, col});
          i += 2;
          continue;
        }
        throw ParseError(line_no, col, "expected '->' after '-'");
      default:
        throw ParseError(line_no, col, std::string("unexpected character '") + c + "'");
    }
  }
  int end_col = static_cast<int>(line.size()) + 1;
  out.push_back({Token::K::End, "", 0, line_no, end_col});
  return out;
}

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek() const { return tokens_[pos_]; }
  Token next() { return tokens_[pos_ == tokens_.size() - 1 ? pos_ : pos_++]; }

  bool at(Token::K k) const { return peek().kind == k; }

  Token expect(Token::K k, const std::string& what) {
    if (!at(k))
      throw ParseError(peek().line, peek().col,
                       "expected " + (what.empty() ? token_desc(k) : what) + ", found " +
                           found_desc());
    return next();
  }

  void skip_if(Token::K k) {
    if (at(k)) next();
  }

  std::string found_desc() const {
    const Token& t = peek();
    if (t.kind == Token::K::Ident || t.kind == Token::K::Int) return "'" + t.text + "'";
    return token_desc(t.kind);
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// shared pieces: domain lines, values, expressions, table bodies
// ---------------------------------------------------------------------------

Domain parse_domain_decl(TokenStream& ts) {
  Token kind = ts.expect(Token::K::Ident, "'bool' or 'mod'");
  bool boolean;
  int modulus = 2;
  if (kind.text == "bool") {
    boolean = true;
  } else if (kind.text == "mod") {
    boolean = false;
    Token m = ts.expect(Token::K::Int, "a modulus");
    if (m.number < 2) throw ParseError(m.line, m.col, "modulus must be at least 2");
    modulus = m.number;
  } else {
    throw ParseError(kind.line, kind.col, "expected 'bool' or 'mod', found '" + kind.text + "'");
  }
  bool with_bottom = false;
  if (ts.at(Token::K::Ident) && ts.peek().text == "with") {
    ts.next();
    Token b = ts.expect(Token::K::Ident, "'bottom'");
    if (b.text != "bottom")
      throw ParseError(b.line, b.col, "expected 'bottom', found '" + b.text + "'");
    with_bottom = true;
  }
  ts.expect(Token::K::End, "");
  return boolean ? Domain::boolean(with_bottom) : Domain::modular(modulus, with_bottom);
}

Value parse_value(TokenStream& ts, const Domain& dom) {
  const Token& t = ts.peek();
  if (t.kind == Token::K::Int) {
    Token v = ts.next();
    if (!dom.contains(Value::of(v.number)))
      throw ParseError(v.line, v.col,
                       "constant " + v.text + " outside domain " + dom.str());
    return Value::of(v.number);
  }
  if (t.kind == Token::K::Ident && t.text == "bot") {
    Token v = ts.next();
    if (!dom.has_bottom())
      throw ParseError(v.line, v.col, "'bot' needs a domain declared with bottom");
    return Value::bottom();
  }
  throw ParseError(t.line, t.col, "expected a value, found " + ts.found_desc());
}

struct VarRef {
  std::string name;
  int line;
  int col;
};

Expression parse_expression(TokenStream& ts, const Domain& dom, std::vector<VarRef>& refs) {
  const Token& t = ts.peek();
  if (t.kind == Token::K::Int) return Expression::constant(parse_value(ts, dom));
  if (t.kind == Token::K::Ident && t.text == "bot")
    return Expression::constant(parse_value(ts, dom));
  if (t.kind == Token::K::Ident) {
    Token name = ts.next();
    if (!ts.at(Token::K::LParen)) {
      refs.push_back({name.text, name.line, name.col});
      return Expression::variable(name.text);
    }
    std::optional<Op> op = op_from_name(name.text);
    if (!op) throw ParseError(name.line, name.col, "unknown operator '" + name.text + "'");
    ts.next();  // (
    std::vector<Expression> args;
    if (!ts.at(Token::K::RParen)) {
      args.push_back(parse_expression(ts, dom, refs));
      while (ts.at(Token::K::Comma)) {
        ts.next();
        args.push_back(parse_expression(ts, dom, refs));
      }
    }
    ts.expect(Token::K::RParen, "");
    OpArity ar = op_arity(*op);
    int n = static_cast<int>(args.size());
    if (n < ar.min || (ar.max >= 0 && n > ar.max)) {
      std::string wants = ar.max < 0 ? "at least " + std::to_string(ar.min)
                          : ar.min == ar.max
                              ? "exactly " + std::to_string(ar.min)
                              : std::to_string(ar.min) + " to " + std::to_string(ar.max);
      throw ParseError(name.line, name.col, "operator '" + name.text + "' takes " + wants +
                                                (ar.min == 1 && ar.max == 1
                                                     ? " argument, got "
                                                     : " arguments, got ") +
                                                std::to_string(n));
    }
    return Expression::apply(*op, std::move(args));
  }
  throw ParseError(t.line, t.col, "expected an expression, found " + ts.found_desc());
}

// Parameter or parent list: ( a b c ) with optional commas.
std::vector<Token> parse_name_list(TokenStream& ts) {
  ts.expect(Token::K::LParen, "");
  std::vector<Token> names;
  while (!ts.at(Token::K::RParen)) {
    names.push_back(ts.expect(Token::K::Ident, "a name"));
    ts.skip_if(Token::K::Comma);
  }
  ts.next();  // )
  return names;
}

// { v v -> v ; ... } rows for an arity-k table.
LookupTable parse_table_body(TokenStream& ts, const Domain& dom, int arity) {
  Token brace = ts.expect(Token::K::LBrace, "");
  std::vector<std::pair<std::vector<Value>, Value>> rows;
  while (!ts.at(Token::K::RBrace)) {
    std::vector<Value> key;
    for (int i = 0; i < arity; ++i) key.push_back(parse_value(ts, dom));
    ts.expect(Token::K::Arrow, "");
    Value out = parse_value(ts, dom);
    rows.emplace_back(std::move(key), out);
    if (!ts.at(Token::K::RBrace)) ts.expect(Token::K::Semi, "';' or '}'");
  }
  ts.next();  // }
  ts.expect(Token::K::End, "");
  try {
    return LookupTable::from_rows(arity, dom, rows);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(brace.line, brace.col, e.what());
  }
}

void reject_reserved_name(const Token& name) {
  if (name.text == "bot")
    throw ParseError(name.line, name.col, "'bot' is a value, not a usable name");
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string current;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  lines.push_back(current);
  return lines;
}

// Statement dispatch shared by both formats: returns the tokens of each
// non-empty line.
std::vector<TokenStream> lex_document(const std::string& text) {
  std::vector<TokenStream> out;
  std::vector<std::string> lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::vector<Token> tokens = tokenize_line(static_cast<int>(i) + 1, lines[i]);
    if (tokens.size() > 1) out.emplace_back(std::move(tokens));
  }
  return out;
}

Domain require_leading_domain(std::vector<TokenStream>& statements, const char* format_name) {
  if (statements.empty()) throw ParseError(1, 1, std::string(format_name) + " is empty");
  TokenStream& first = statements.front();
  const Token& head = first.peek();
  if (!(head.kind == Token::K::Ident && head.text == "domain"))
    throw ParseError(head.line, head.col, "the first declaration must be 'domain ...'");
  first.next();
  return parse_domain_decl(first);
}

std::string row_str(const LookupTable& table) {
  const Domain& dom = table.domain();
  const std::size_t d = dom.size();
  std::string body;
  std::vector<int> ord(static_cast<std::size_t>(table.arity()), 0);
  std::vector<Value> key(static_cast<std::size_t>(table.arity()));
  for (std::size_t row = 0; row < table.dense().size(); ++row) {
    if (row) body += " ; ";
    for (std::size_t i = 0; i < key.size(); ++i) {
      key[i] = dom.elements()[static_cast<std::size_t>(ord[i])];
      body += key[i].str() + " ";
    }
    body += "-> " + table.at(key).str();
    for (int i = table.arity() - 1; i >= 0; --i) {
      if (++ord[static_cast<std::size_t>(i)] < static_cast<int>(d)) break;
      ord[static_cast<std::size_t>(i)] = 0;
    }
  }
  return body;
}

// A mechanism prints as a table declaration when it is a lookup table applied
// directly to variables; anything else goes through Expression::str().
const LookupTable* printable_table(const Expression& e, std::vector<std::string>& arg_names) {
  if (e.kind() != Expression::Kind::Table) return nullptr;
  arg_names.clear();
  for (const Expression& a : e.args()) {
    if (a.kind() != Expression::Kind::Variable) return nullptr;
    arg_names.push_back(a.variable_name());
  }
  return &e.lookup();
}

void reject_nested_tables(const Expression& e) {
  for (const Expression& a : e.args()) {
    if (a.kind() == Expression::Kind::Table)
      throw Error("lookup tables only print as top-level table declarations");
    reject_nested_tables(a);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// model format
// ---------------------------------------------------------------------------

CausalModel parse_model(const std::string& text) {
  std::vector<TokenStream> statements = lex_document(text);
  Domain dom = require_leading_domain(statements, "model text");

  std::map<std::string, Token> declared;  // every variable, for duplicate checks
  std::vector<std::string> exogenous;
  std::vector<std::pair<std::string, Expression>> mechanisms;
  std::map<std::string, Token> mechanism_decl;  // name -> its declaration token
  std::vector<VarRef> refs;

  auto declare = [&](const Token& name) {
    reject_reserved_name(name);
    auto [it, fresh] = declared.emplace(name.text, name);
    if (!fresh)
      throw ParseError(name.line, name.col,
                       "'" + name.text + "' already declared on line " +
                           std::to_string(it->second.line));
  };

  for (std::size_t s = 1; s < statements.size(); ++s) {
    TokenStream& ts = statements[s];
    Token head = ts.expect(Token::K::Ident, "a declaration");
    if (head.text == "domain") {
      throw ParseError(head.line, head.col, "domain was already declared");
    } else if (head.text == "exo") {
      if (!ts.at(Token::K::Ident))
        throw ParseError(ts.peek().line, ts.peek().col, "exo needs at least one name");
      while (ts.at(Token::K::Ident)) {
        Token name = ts.next();
        declare(name);
        exogenous.push_back(name.text);
      }
      ts.expect(Token::K::End, "");
    } else if (head.text == "var") {
      Token name = ts.expect(Token::K::Ident, "a variable name");
      declare(name);
      ts.expect(Token::K::Assign, "");
      Expression body = parse_expression(ts, dom, refs);
      ts.expect(Token::K::End, "");
      mechanisms.emplace_back(name.text, std::move(body));
      mechanism_decl.emplace(name.text, name);
    } else if (head.text == "table") {
      Token name = ts.expect(Token::K::Ident, "a variable name");
      declare(name);
      std::vector<Token> parents = parse_name_list(ts);
      LookupTable table = parse_table_body(ts, dom, static_cast<int>(parents.size()));
      std::vector<Expression> args;
      for (const Token& p : parents) {
        refs.push_back({p.text, p.line, p.col});
        args.push_back(Expression::variable(p.text));
      }
      mechanisms.emplace_back(
          name.text, Expression::table(std::make_shared<LookupTable>(std::move(table)),
                                       std::move(args)));
      mechanism_decl.emplace(name.text, name);
    } else {
      throw ParseError(head.line, head.col,
                       "expected 'exo', 'var' or 'table', found '" + head.text + "'");
    }
  }

  for (const VarRef& r : refs)
    if (!declared.count(r.name))
      throw ParseError(r.line, r.col, "unknown variable '" + r.name + "'");

  // Cycle check here, where declaration lines are still known.
  std::map<std::string, std::set<std::string>> deps;
  for (const auto& [name, body] : mechanisms) {
    std::set<std::string> parents = body.variables();
    std::set<std::string> endo_parents;
    for (const std::string& p : parents)
      if (mechanism_decl.count(p)) endo_parents.insert(p);
    deps.emplace(name, std::move(endo_parents));
  }
  std::map<std::string, int> state;  // 0 unvisited, 1 on stack, 2 done
  auto dfs = [&](auto&& self, const std::string& v) -> const std::string* {
    state[v] = 1;
    for (const std::string& p : deps.at(v)) {
      if (state[p] == 1) return &p;
      if (state[p] == 0)
        if (const std::string* hit = self(self, p)) return hit;
    }
    state[v] = 2;
    return nullptr;
  };
  for (const auto& [name, _] : deps)
    if (state[name] == 0)
      if (const std::string* hit = dfs(dfs, name)) {
        const Token& at = mechanism_decl.at(*hit);
        throw ParseError(at.line, at.col, "cyclic definition involving '" + *hit + "'");
      }

  return CausalModel(dom, std::move(exogenous), std::move(mechanisms));
}

std::string model_to_text(const CausalModel& m) {
  std::string out = "domain " + m.domain().str() + "\n";
  if (!m.exogenous().empty()) {
    out += "exo";
    for (const std::string& u : m.exogenous()) out += " " + u;
    out += "\n";
  }
  for (const std::string& v : m.endogenous()) {
    const Expression& body = m.mechanism(v);
    std::vector<std::string> arg_names;
    if (const LookupTable* table = printable_table(body, arg_names)) {
      out += "table " + v + " (";
      for (std::size_t i = 0; i < arg_names.size(); ++i)
        out += (i ? " " : "") + arg_names[i];
      out += ") { " + row_str(*table) + " }\n";
    } else {
      reject_nested_tables(body);
      out += "var " + v + " := " + body.str() + "\n";
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// interpretation format
// ---------------------------------------------------------------------------

Interpretation parse_interpretation(const std::string& text) {
  std::vector<TokenStream> statements = lex_document(text);
  Domain dom = require_leading_domain(statements, "interpretation text");

  std::map<std::string, Interpretation::Function> functions;
  std::map<std::string, int> decl_line;

  auto declare = [&](const Token& name) {
    reject_reserved_name(name);
    if (name.text.rfind("const_", 0) == 0)
      throw ParseError(name.line, name.col,
                       "names starting with 'const_' are reserved for the implicit constants");
    auto [it, fresh] = decl_line.emplace(name.text, name.line);
    if (!fresh)
      throw ParseError(name.line, name.col,
                       "'" + name.text + "' already declared on line " +
                           std::to_string(it->second));
  };

  auto check_params = [&](const std::vector<Token>& params) {
    std::set<std::string> seen;
    for (const Token& p : params) {
      reject_reserved_name(p);
      if (!seen.insert(p.text).second)
        throw ParseError(p.line, p.col, "duplicate parameter '" + p.text + "'");
    }
  };

  for (std::size_t s = 1; s < statements.size(); ++s) {
    TokenStream& ts = statements[s];
    Token head = ts.expect(Token::K::Ident, "a declaration");
    if (head.text == "domain") {
      throw ParseError(head.line, head.col, "domain was already declared");
    } else if (head.text == "fun") {
      Token name = ts.expect(Token::K::Ident, "a function name");
      declare(name);
      std::vector<Token> params = parse_name_list(ts);
      check_params(params);
      ts.expect(Token::K::Assign, "");
      std::vector<VarRef> refs;
      Expression body = parse_expression(ts, dom, refs);
      ts.expect(Token::K::End, "");
      for (const VarRef& r : refs) {
        bool found = std::any_of(params.begin(), params.end(),
                                 [&](const Token& p) { return p.text == r.name; });
        if (!found) throw ParseError(r.line, r.col, "unknown parameter '" + r.name + "'");
      }
      std::vector<std::string> param_names;
      for (const Token& p : params) param_names.push_back(p.text);
      functions.emplace(name.text,
                        Interpretation::Function{std::move(param_names), std::move(body)});
    } else if (head.text == "table") {
      Token name = ts.expect(Token::K::Ident, "a function name");
      declare(name);
      std::vector<Token> params = parse_name_list(ts);
      check_params(params);
      LookupTable table = parse_table_body(ts, dom, static_cast<int>(params.size()));
      std::vector<std::string> param_names;
      std::vector<Expression> args;
      for (const Token& p : params) {
        param_names.push_back(p.text);
        args.push_back(Expression::variable(p.text));
      }
      functions.emplace(
          name.text,
          Interpretation::Function{std::move(param_names),
                                   Expression::table(std::make_shared<LookupTable>(
                                                         std::move(table)),
                                                     std::move(args))});
    } else {
      throw ParseError(head.line, head.col,
                       "expected 'fun' or 'table', found '" + head.text + "'");
    }
  }

  return Interpretation(dom, std::move(functions));
}

std::string interpretation_to_text(const Interpretation& interp) {
  std::string out = "domain " + interp.domain().str() + "\n";
  for (const auto& [name, fn] : interp.functions()) {
    std::vector<std::string> arg_names;
    const LookupTable* table = printable_table(fn.body, arg_names);
    if (table && arg_names == fn.params) {
      out += "table " + name + " (";
      for (std::size_t i = 0; i < fn.params.size(); ++i) out += (i ? " " : "") + fn.params[i];
      out += ") { " + row_str(*table) + " }\n";
    } else {
      reject_nested_tables(fn.body);
      out += "fun " + name + "(";
      for (std::size_t i = 0; i < fn.params.size(); ++i) out += (i ? " " : "") + fn.params[i];
      out += ") := " + fn.body.str() + "\n";
    }
  }
  return out;
}

}  // namespace causeway
