#include "umlsem/elaborate/expr_eval.hpp"

#include "umlsem/source.hpp"

namespace umlsem::elab {

namespace {

using Base = TypeRef::Base;

const char* base_name(Base b) {
  switch (b) {
    case Base::Int: return "int";
    case Base::Bool: return "bool";
    case Base::String: return "string";
    case Base::Class: return "object";
  }
  return "?";
}

Base literal_base(const Value& v, const SourcePos& pos) {
  if (v.is_int()) return Base::Int;
  if (v.is_bool()) return Base::Bool;
  if (v.is_string()) return Base::String;
  if (v.is_ref()) return Base::Class;
  throw Error(ErrorKind::GuardType, "expression uses an unknown value", pos);
}

[[noreturn]] void type_error(const dsl::Expr& e, const std::string& why) { throw Error(ErrorKind::GuardType, why, e.pos); }

}  // namespace

TypeRef::Base check_expr(const dsl::Expr& expr, const NameTypes& names, bool allow_cardinality) {
  using K = dsl::Expr::Kind;
  switch (expr.kind) {
    case K::Literal: return literal_base(expr.literal, expr.pos);
    case K::Name: {
      auto t = names ? names(expr.name) : std::nullopt;
      if (!t) type_error(expr, "unknown name '" + expr.name + "'");
      return t->base;
    }
    case K::Cardinality:
      if (!allow_cardinality) type_error(expr, "cardinality term '#" + expr.name + "' is only allowed in constraints");
      return Base::Int;
    case K::Not:
      if (check_expr(expr.operands.at(0), names, allow_cardinality) != Base::Bool) type_error(expr, "'!' needs a bool operand");
      return Base::Bool;
    case K::Neg:
      if (check_expr(expr.operands.at(0), names, allow_cardinality) != Base::Int) type_error(expr, "'-' needs an int operand");
      return Base::Int;
    case K::Binary: {
      Base l = check_expr(expr.operands.at(0), names, allow_cardinality);
      Base r = check_expr(expr.operands.at(1), names, allow_cardinality);
      const std::string& op = expr.op;
      if (op == "||" || op == "&&") {
        if (l != Base::Bool || r != Base::Bool) type_error(expr, "'" + op + "' needs bool operands");
        return Base::Bool;
      }
      if (op == "+" || op == "-") {
        if (l != Base::Int || r != Base::Int) type_error(expr, "'" + op + "' needs int operands");
        return Base::Int;
      }
      if (op == "==" || op == "!=") {
        if (l != r)
          type_error(expr, std::string("cannot compare ") + base_name(l) + " with " + base_name(r));
        return Base::Bool;
      }
      if (op == "<" || op == "<=" || op == ">" || op == ">=") {
        if (l != Base::Int || r != Base::Int) type_error(expr, "'" + op + "' needs int operands");
        return Base::Bool;
      }
      type_error(expr, "unknown operator '" + op + "'");
    }
  }
  type_error(expr, "malformed expression");
}

Value evaluate(const dsl::Expr& expr, const std::function<Value(const std::string&)>& name,
               const std::function<std::int64_t(const std::string&)>& cardinality) {
  using K = dsl::Expr::Kind;
  switch (expr.kind) {
    case K::Literal: return expr.literal;
    case K::Name: return name(expr.name);
    case K::Cardinality:
      if (!cardinality) type_error(expr, "cardinality is not available here");
      return Value::integer(cardinality(expr.name));
    case K::Not: {
      Value v = evaluate(expr.operands.at(0), name, cardinality);
      if (!v.is_bool()) type_error(expr, "'!' on a non-bool value");
      return Value::boolean(!v.as_bool());
    }
    case K::Neg: {
      Value v = evaluate(expr.operands.at(0), name, cardinality);
      if (!v.is_int()) type_error(expr, "'-' on a non-int value");
      return Value::integer(-v.as_int());
    }
    case K::Binary: {
      const std::string& op = expr.op;
      Value l = evaluate(expr.operands.at(0), name, cardinality);
      if (op == "&&" || op == "||") {
        if (!l.is_bool()) type_error(expr, "'" + op + "' on a non-bool value");
        if (op == "&&" && !l.as_bool()) return Value::boolean(false);
        if (op == "||" && l.as_bool()) return Value::boolean(true);
        Value r = evaluate(expr.operands.at(1), name, cardinality);
        if (!r.is_bool()) type_error(expr, "'" + op + "' on a non-bool value");
        return r;
      }
      Value r = evaluate(expr.operands.at(1), name, cardinality);
      if (op == "==") return Value::boolean(l == r);
      if (op == "!=") return Value::boolean(l != r);
      if (!l.is_int() || !r.is_int()) type_error(expr, "'" + op + "' on non-int values");
      std::int64_t a = l.as_int(), b = r.as_int();
      if (op == "+") return Value::integer(a + b);
      if (op == "-") return Value::integer(a - b);
      if (op == "<") return Value::boolean(a < b);
      if (op == "<=") return Value::boolean(a <= b);
      if (op == ">") return Value::boolean(a > b);
      if (op == ">=") return Value::boolean(a >= b);
      type_error(expr, "unknown operator '" + op + "'");
    }
  }
  type_error(expr, "malformed expression");
}

std::set<std::string> free_names(const dsl::Expr& expr) {
  std::set<std::string> out;
  if (expr.kind == dsl::Expr::Kind::Name) out.insert(expr.name);
  for (const auto& o : expr.operands) {
    auto sub = free_names(o);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

}  // namespace umlsem::elab
