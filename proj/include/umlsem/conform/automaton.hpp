#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "umlsem/dsl/ast.hpp"
#include "umlsem/elaborate/static_model.hpp"
#include "umlsem/simulate/world.hpp"

namespace umlsem::conform {

struct AbstractTransition {
  enum class Direction { Input, Output };

  Direction direction = Direction::Input;
  std::string peer;  // role on the other end
  std::string selector;
  std::vector<ArgPattern> args;
  /// Index of the interaction in the diagram.
  std::size_t interaction = 0;
  SourcePos pos;

  std::string to_string() const;
};

/// Linear chain s_0 -t_1-> s_1 ... -t_n-> s_n for one lifeline.
struct AbstractAutomaton {
  std::string role;
  ClassName cls;
  std::vector<AbstractTransition> transitions;

  std::size_t state_count() const { return transitions.size() + 1; }
};

/// One automaton per lifeline, keyed by role.
std::map<std::string, AbstractAutomaton> derive_automata(const dsl::SequenceDiagramAst& seq);

struct MappingDefect {
  std::string role;
  std::size_t transition = 0;
  std::string message;
  SourcePos pos;
};

/// (role, abstract transition index) -> indices into the role class's STS delta.
struct TransitionMapping {
  std::map<std::pair<std::string, std::size_t>, std::vector<std::size_t>> concrete;
  std::vector<MappingDefect> defects;
};

/// Input-labeled abstract transitions map to every delta entry consuming a
/// matching message; output-labeled ones to every entry emitting one.
/// Throws Error(UnknownRoleClass).
TransitionMapping map_abstract_transitions(const std::map<std::string, AbstractAutomaton>& autos,
                                           const sim::StsMap& stss, const elab::StaticModel& model);

}  // namespace umlsem::conform
