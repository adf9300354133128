#include "umlsem/core/value.hpp"

namespace umlsem {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string Value::to_string() const {
  struct Visitor {
    std::string operator()(std::monostate) const { return "?"; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return quote(v); }
    std::string operator()(const ObjectId& v) const { return v.to_string(); }
  };
  return std::visit(Visitor{}, data_);
}

std::string join_values(const std::vector<Value>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += values[i].to_string();
  }
  return out;
}

std::optional<std::vector<Value>> TypeRef::finite_domain() const {
  switch (base) {
    case Base::Bool: return std::vector<Value>{Value::boolean(false), Value::boolean(true)};
    case Base::Int:
      if (range) {
        std::vector<Value> out;
        for (std::int64_t v = range->first; v <= range->second; ++v) out.push_back(Value::integer(v));
        return out;
      }
      return std::nullopt;
    default: return std::nullopt;
  }
}

Value TypeRef::default_value() const {
  switch (base) {
    case Base::Int: return Value::integer(range ? range->first : 0);
    case Base::Bool: return Value::boolean(false);
    case Base::String: return Value::string("");
    case Base::Class: return Value();
  }
  return Value();
}

bool TypeRef::admits(const Value& v) const {
  switch (base) {
    case Base::Int:
      if (!v.is_int()) return false;
      return !range || (v.as_int() >= range->first && v.as_int() <= range->second);
    case Base::Bool: return v.is_bool();
    case Base::String: return v.is_string();
    case Base::Class: return v.is_ref() || v.is_unknown();
  }
  return false;
}

std::string TypeRef::to_string() const {
  switch (base) {
    case Base::Int:
      return range ? "int[" + std::to_string(range->first) + ".." + std::to_string(range->second) + "]" : "int";
    case Base::Bool: return "bool";
    case Base::String: return "string";
    case Base::Class: return class_name;
  }
  return "?";
}

}  // namespace umlsem
