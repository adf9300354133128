#pragma once

#include <optional>
#include <string>
#include <vector>

#include "umlsem/core/state.hpp"
#include "umlsem/dsl/ast.hpp"

namespace umlsem::elab {

struct FlatTransition {
  FlatLabel source;
  FlatLabel destination;
  /// Index into FlatStateDiagram::decls (event, guard and sends).
  std::size_t decl = 0;
};

/// A state diagram with every composite expanded. A label lists the active
/// leaf of each concurrently active region, in document order.
struct FlatStateDiagram {
  ClassName owner;
  std::optional<UnhandledPolicy> unhandled;
  std::vector<FlatLabel> states;
  std::vector<FlatLabel> initial;
  std::vector<FlatTransition> transitions;
  std::vector<dsl::TransitionDecl> decls;
};

/// Throws Error(NoInitial) when an Or-composite (or the top level) has no
/// initial substate.
FlatStateDiagram flatten(const dsl::StateDiagramAst& ast);

}  // namespace umlsem::elab
