#pragma once

// Reference computations the library results are compared against. None of
// them calls the code under test for the quantity it checks.

#include <map>
#include <set>
#include <string>

#include "umlsem/core/behavior.hpp"
#include "umlsem/dsl/ast.hpp"
#include "umlsem/core/ids.hpp"
#include "umlsem/elaborate/flatten.hpp"
#include "umlsem/simulate/run.hpp"

namespace oracle {

/// Number of flat states by counting over the state tree: a simple state
/// (or empty composite) counts 1, an Or-state the sum, an And-state the product.
std::size_t flat_state_count(const umlsem::dsl::StateDiagramAst& ast);

/// Leaves occurring in some configuration reachable from the initial one,
/// interpreting transitions directly on sets of active leaves.
std::set<std::string> reachable_leaves(const umlsem::dsl::StateDiagramAst& ast);

/// Leaves occurring in some flat label reachable by BFS over flat transitions.
std::set<std::string> reachable_leaves(const umlsem::elab::FlatStateDiagram& flat);

/// Black-box behavior by enumerating every run of the STS on every input
/// stream, reading the transition relation directly.
umlsem::Behavior run_enumeration(const umlsem::StateTransitionSystem& sts,
                                 const std::vector<umlsem::InputSymbol>& alphabet, std::size_t horizon);

/// Output streams some run produces on `input`.
std::set<umlsem::OutputStream> outputs_of(const umlsem::StateTransitionSystem& sts, const umlsem::InputStream& input);

/// Output-set inclusion on every stream over the abstract alphabet.
bool refines(const umlsem::StateTransitionSystem& abstract, const umlsem::StateTransitionSystem& concrete,
             std::size_t horizon);

/// Medium axioms on a finished run: per-pair FIFO, no loss, duplication,
/// synthesis or modification, delivery strictly after sending, and streams
/// agreeing with the event log. Returns a description of the first breach.
std::string medium_breach(const umlsem::sim::Execution& exec);

}  // namespace oracle

namespace oracle {

/// Greedy replay of a trace against a sequence diagram: every interaction
/// needs a send (in diagram order across all lifelines) whose FIFO-paired
/// delivery exists, and each lifeline must meet its own sends and deliveries
/// in chain order.
bool replays(const umlsem::dsl::SequenceDiagramAst& seq, const std::map<std::string, umlsem::ObjectId>& binding,
             const std::vector<umlsem::sim::TraceEvent>& events);

}  // namespace oracle
