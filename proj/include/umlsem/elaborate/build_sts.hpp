#pragma once

#include <cstddef>
#include <optional>

#include "umlsem/core/sts.hpp"
#include "umlsem/elaborate/flatten.hpp"
#include "umlsem/elaborate/static_model.hpp"

namespace umlsem::elab {

inline constexpr std::size_t kDefaultBudget = 1'000'000;

struct StsOptions {
  /// Overrides the diagram's own "unhandled" setting.
  std::optional<UnhandledPolicy> unhandled;
  /// Upper bound on generated concrete transitions.
  std::size_t budget = kDefaultBudget;
  /// Longest output sequence a chaotic transition may emit.
  std::size_t chaos_output_length = 1;
};

/// Compiles a flattened diagram of class `cls` into its state transition
/// system. Throws Error(UnknownSelector | GuardType | Resolve | HorizonTooLarge).
StateTransitionSystem build_sts(const FlatStateDiagram& flat, const StaticModel& model, const ClassName& cls,
                                const StsOptions& options = {});

/// flatten + build_sts for the diagram's owner class.
StateTransitionSystem build_sts(const dsl::StateDiagramAst& ast, const StaticModel& model,
                                const StsOptions& options = {});

}  // namespace umlsem::elab
