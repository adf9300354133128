#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>

#include "umlsem/core/value.hpp"
#include "umlsem/dsl/ast.hpp"

namespace umlsem::elab {

/// Resolves a name to its declared type; nullopt for unknown names.
using NameTypes = std::function<std::optional<TypeRef>(const std::string&)>;

/// Type-checks `expr`; throws Error(GuardType) on unknown names, ill-typed
/// operands, or cardinality terms when `allow_cardinality` is false.
TypeRef::Base check_expr(const dsl::Expr& expr, const NameTypes& names, bool allow_cardinality);

/// Evaluates a type-correct expression.
Value evaluate(const dsl::Expr& expr, const std::function<Value(const std::string&)>& name,
               const std::function<std::int64_t(const std::string&)>& cardinality = {});

/// Names (not cardinality terms) occurring in the expression.
std::set<std::string> free_names(const dsl::Expr& expr);

}  // namespace umlsem::elab
