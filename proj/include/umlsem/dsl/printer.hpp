#pragma once

#include <string>

#include "umlsem/dsl/ast.hpp"

namespace umlsem::dsl {

/// Canonical concrete syntax; the output reparses to an equal AST.
std::string print(const ClassModelAst& ast);
std::string print(const StateDiagramAst& ast);
std::string print(const SequenceDiagramAst& ast);
std::string print(const SnapshotAst& ast);
std::string print(const Expr& expr);

/// Structural equality: positions and document names are ignored, class
/// and package declarations are compared as sets.
bool structurally_equal(const ClassModelAst& a, const ClassModelAst& b);
bool structurally_equal(const StateDiagramAst& a, const StateDiagramAst& b);
bool structurally_equal(const SequenceDiagramAst& a, const SequenceDiagramAst& b);
bool structurally_equal(const SnapshotAst& a, const SnapshotAst& b);

}  // namespace umlsem::dsl
