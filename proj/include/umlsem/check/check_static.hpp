#pragma once

#include <map>
#include <string>
#include <vector>

#include "umlsem/check/violation.hpp"
#include "umlsem/core/state.hpp"
#include "umlsem/dsl/ast.hpp"
#include "umlsem/elaborate/static_model.hpp"

namespace umlsem::check {

/// Rules over the class model (from a lenient elaboration), the state
/// diagrams' event selectors and the snapshots' object classes.
std::vector<Violation> check_static(const elab::StaticModel& model,
                                    const std::vector<dsl::StateDiagramAst>& diagrams = {},
                                    const std::vector<dsl::SnapshotAst>& snapshots = {});

/// A snapshot as a system state without control states (for integrity
/// checks that do not need behavior).
struct SnapshotState {
  SystemState state;
  std::map<ObjectId, std::string> names;
};

/// Throws ResolveError for dangling object or association names.
SnapshotState snapshot_state(const elab::StaticModel& model, const dsl::SnapshotAst& snapshot);

/// Integrity rules on one system state: multiplicities, link symmetry,
/// composition sharing, link end types and user constraints.
std::vector<Violation> check_state(const SystemState& state, const elab::StaticModel& model,
                                   const std::map<ObjectId, std::string>& names = {});

}  // namespace umlsem::check
