#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "umlsem/core/ids.hpp"

namespace umlsem {

/// Base value types plus object references. monostate is the "unknown"
/// value used where a representative is needed for an infinite domain.
class Value {
 public:
  using Data = std::variant<std::monostate, std::int64_t, bool, std::string, ObjectId>;

  Value() = default;
  static Value integer(std::int64_t v) { return Value(Data(v)); }
  static Value boolean(bool v) { return Value(Data(v)); }
  static Value string(std::string v) { return Value(Data(std::move(v))); }
  static Value ref(ObjectId id) { return Value(Data(std::move(id))); }

  bool is_unknown() const { return std::holds_alternative<std::monostate>(data_); }
  bool is_int() const { return std::holds_alternative<std::int64_t>(data_); }
  bool is_bool() const { return std::holds_alternative<bool>(data_); }
  bool is_string() const { return std::holds_alternative<std::string>(data_); }
  bool is_ref() const { return std::holds_alternative<ObjectId>(data_); }

  std::int64_t as_int() const { return std::get<std::int64_t>(data_); }
  bool as_bool() const { return std::get<bool>(data_); }
  const std::string& as_string() const { return std::get<std::string>(data_); }
  const ObjectId& as_ref() const { return std::get<ObjectId>(data_); }

  const Data& data() const { return data_; }

  /// Literal rendering: 5, true, "text", Class#3, ?
  std::string to_string() const;

  auto operator<=>(const Value&) const = default;

 private:
  explicit Value(Data d) : data_(std::move(d)) {}
  Data data_;
};

std::string join_values(const std::vector<Value>& values);

/// Declared type of an attribute or parameter.
struct TypeRef {
  enum class Base { Int, Bool, String, Class };

  Base base = Base::Int;
  ClassName class_name;  // Base::Class only
  std::optional<std::pair<std::int64_t, std::int64_t>> range;  // Base::Int only

  static TypeRef integer() { return {}; }
  static TypeRef int_range(std::int64_t lo, std::int64_t hi) { return {Base::Int, {}, std::make_pair(lo, hi)}; }
  static TypeRef boolean() { return {Base::Bool, {}, std::nullopt}; }
  static TypeRef string() { return {Base::String, {}, std::nullopt}; }
  static TypeRef object(ClassName c) { return {Base::Class, std::move(c), std::nullopt}; }

  /// Every value of the type if it is finite (bool, ranged int).
  std::optional<std::vector<Value>> finite_domain() const;
  /// A deterministic representative: the first domain value, or the
  /// type's default for infinite types (0, "", unknown reference).
  Value default_value() const;
  bool admits(const Value& v) const;

  std::string to_string() const;

  auto operator<=>(const TypeRef&) const = default;
};

}  // namespace umlsem
