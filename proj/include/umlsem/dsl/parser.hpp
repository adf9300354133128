#pragma once

#include <string_view>

#include "umlsem/dsl/ast.hpp"

namespace umlsem::dsl {

/// Throws SyntaxError / ResolveError. Every node carries its position.
ClassModelAst parse_class_model(std::string_view text, std::string_view document = "<input>");
StateDiagramAst parse_state_diagram(std::string_view text, std::string_view document = "<input>");
SequenceDiagramAst parse_sequence_diagram(std::string_view text, std::string_view document = "<input>");
/// With a class model, object classes, bound attributes and links are
/// resolved against it as well.
SnapshotAst parse_snapshot(std::string_view text, std::string_view document = "<input>",
                           const ClassModelAst* model = nullptr);

/// Checks a snapshot against a class model; throws ResolveError.
void resolve_snapshot(const SnapshotAst& snapshot, const ClassModelAst& model);

/// Resolves `name` as written inside `package` to a declared class.
std::optional<ClassName> resolve_class_name(const ClassModelAst& model, const std::string& name,
                                            const std::string& package = "");

/// True if `sub` equals or (transitively) specializes `super` according to
/// the model's generalizations.
bool conforms_to(const ClassModelAst& model, const ClassName& sub, const ClassName& super);

}  // namespace umlsem::dsl
