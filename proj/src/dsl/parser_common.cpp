#include "parser_common.hpp"

#include <algorithm>
#include <array>

namespace umlsem::dsl::detail {

namespace {

constexpr std::array<std::string_view, 29> kReserved = {
    "class",  "abstract", "attr",   "op",      "assoc",     "gen",       "extends",  "package",   "constraint", "on",
    "int",    "bool",     "string", "true",    "false",     "statechart", "initial", "state",     "region",     "trans",
    "new",    "self",     "seq",    "lifeline", "msg",      "snapshot",  "obj",      "link",     "call"};

}  // namespace

bool is_reserved(std::string_view word) {
  return std::find(kReserved.begin(), kReserved.end(), word) != kReserved.end();
}

Cursor::Cursor(std::string_view text, std::string_view document)
    : tokens_(tokenize(text, document)), document_(document) {}

const Token& Cursor::peek(std::size_t ahead) const {
  return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
}

const Token& Cursor::next() {
  const Token& t = tokens_[pos_];
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return t;
}

bool Cursor::accept_punct(std::string_view p) {
  if (!peek().is_punct(p)) return false;
  next();
  return true;
}

bool Cursor::accept_word(std::string_view w) {
  if (!peek().is_word(w)) return false;
  next();
  return true;
}

const Token& Cursor::expect_punct(std::string_view p) {
  if (!peek().is_punct(p)) fail({"'" + std::string(p) + "'"});
  return next();
}

const Token& Cursor::expect_word(std::string_view w) {
  if (!peek().is_word(w)) fail({"'" + std::string(w) + "'"});
  return next();
}

const Token& Cursor::expect_ident(std::string_view what) {
  const Token& t = peek();
  if (t.kind != Token::Kind::Ident || is_reserved(t.text)) fail({std::string(what)});
  return next();
}

std::int64_t Cursor::expect_int(std::string_view what) {
  if (peek().kind != Token::Kind::Int) fail({std::string(what)});
  return next().int_value;
}

void Cursor::skip_separators() {
  while (peek().kind == Token::Kind::Newline || peek().is_punct(";")) next();
}

void Cursor::end_statement() {
  const Token& t = peek();
  if (t.kind == Token::Kind::Newline || t.is_punct(";")) {
    skip_separators();
    return;
  }
  if (t.kind == Token::Kind::End || t.is_punct("}")) return;
  fail({"end of line", "';'"});
}

void Cursor::fail(std::vector<std::string> expected) const {
  const Token& t = peek();
  throw SyntaxError(t.pos, std::move(expected), t.describe());
}

std::string Cursor::qualified_name() {
  std::string name = expect_ident("name").text;
  while (peek().is_punct(".") && peek(1).kind == Token::Kind::Ident && !is_reserved(peek(1).text)) {
    next();
    name += "." + next().text;
  }
  return name;
}

bool Cursor::at_literal() const {
  const Token& t = peek();
  return t.kind == Token::Kind::Int || t.kind == Token::Kind::String || t.is_word("true") || t.is_word("false") ||
         (t.is_punct("-") && peek(1).kind == Token::Kind::Int);
}

Value Cursor::literal() {
  const Token& t = peek();
  if (t.kind == Token::Kind::Int) return Value::integer(next().int_value);
  if (t.kind == Token::Kind::String) return Value::string(next().text);
  if (t.is_word("true")) {
    next();
    return Value::boolean(true);
  }
  if (t.is_word("false")) {
    next();
    return Value::boolean(false);
  }
  if (t.is_punct("-") && peek(1).kind == Token::Kind::Int) {
    next();
    return Value::integer(-next().int_value);
  }
  fail({"literal"});
}

TypeRef Cursor::type_ref() {
  if (accept_word("bool")) return TypeRef::boolean();
  if (accept_word("string")) return TypeRef::string();
  if (accept_word("int")) {
    if (accept_punct("[")) {
      auto lo = literal();
      expect_punct("..");
      auto hi = literal();
      if (!lo.is_int() || !hi.is_int()) fail({"integer bounds"});
      if (lo.as_int() > hi.as_int()) throw SyntaxError(peek().pos, {"lower bound <= upper bound"}, "empty range");
      expect_punct("]");
      return TypeRef::int_range(lo.as_int(), hi.as_int());
    }
    return TypeRef::integer();
  }
  if (peek().kind == Token::Kind::Ident && !is_reserved(peek().text)) return TypeRef::object(qualified_name());
  fail({"type"});
}

Expr Cursor::expression() { return parse_or(); }

Expr Cursor::parse_or() {
  Expr lhs = parse_and();
  while (peek().is_punct("||")) {
    SourcePos p = next().pos;
    lhs = Expr::binary("||", std::move(lhs), parse_and(), p);
  }
  return lhs;
}

Expr Cursor::parse_and() {
  Expr lhs = parse_not();
  while (peek().is_punct("&&")) {
    SourcePos p = next().pos;
    lhs = Expr::binary("&&", std::move(lhs), parse_not(), p);
  }
  return lhs;
}

Expr Cursor::parse_not() {
  if (peek().is_punct("!")) {
    SourcePos p = next().pos;
    Expr e;
    e.kind = Expr::Kind::Not;
    e.pos = p;
    e.operands.push_back(parse_not());
    return e;
  }
  return parse_cmp();
}

Expr Cursor::parse_cmp() {
  Expr lhs = parse_add();
  for (std::string_view op : {"==", "!=", "<=", ">=", "<", ">"}) {
    if (peek().is_punct(op)) {
      SourcePos p = next().pos;
      return Expr::binary(std::string(op), std::move(lhs), parse_add(), p);
    }
  }
  return lhs;
}

Expr Cursor::parse_add() {
  Expr lhs = parse_atom();
  while (peek().is_punct("+") || peek().is_punct("-")) {
    const Token& t = next();
    std::string op = t.text;
    lhs = Expr::binary(op, std::move(lhs), parse_atom(), t.pos);
  }
  return lhs;
}

Expr Cursor::parse_atom() {
  const Token& t = peek();
  SourcePos p = t.pos;
  if (t.is_punct("(")) {
    next();
    Expr e = parse_or();
    expect_punct(")");
    return e;
  }
  if (t.is_punct("-")) {
    next();
    if (peek().kind == Token::Kind::Int) return Expr::lit(Value::integer(-next().int_value), p);
    return Expr::negate(parse_atom(), p);
  }
  if (t.is_punct("#")) {
    next();
    Expr e;
    e.kind = Expr::Kind::Cardinality;
    e.name = qualified_name();
    e.pos = p;
    return e;
  }
  if (at_literal()) return Expr::lit(literal(), p);
  if (t.kind == Token::Kind::Ident && !is_reserved(t.text)) return Expr::ref(next().text, p);
  fail({"expression"});
}

std::vector<ArgPattern> arg_patterns(Cursor& c, bool allow_binders) {
  std::vector<ArgPattern> out;
  c.expect_punct("(");
  if (c.accept_punct(")")) return out;
  do {
    if (c.at_literal()) {
      out.push_back(ArgPattern::lit(c.literal()));
    } else if (c.accept_word("_")) {
      out.push_back(ArgPattern::wildcard());
    } else if (allow_binders) {
      out.push_back(ArgPattern::bind(c.expect_ident("parameter name").text));
    } else {
      c.fail({"literal", "'_'"});
    }
  } while (c.accept_punct(","));
  c.expect_punct(")");
  return out;
}

}  // namespace umlsem::dsl::detail
