#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "umlsem/core/behavior.hpp"
#include "umlsem/core/sts.hpp"

namespace umlsem::elab {

/// Possible (next state, rendered outputs) pairs for one tick. An empty
/// tick either idles or fires a spontaneous transition; a message tick
/// fires one of the transitions enabled for it (none: the run blocks).
std::vector<std::pair<std::size_t, std::vector<std::string>>> tick_successors(const StateTransitionSystem& sts,
                                                                              std::size_t state,
                                                                              const InputTick& input);

/// Black-box behavior up to `horizon` ticks over the STS's input alphabet.
/// Throws Error(HorizonTooLarge) once more than `budget` configurations
/// have been generated.
Behavior derive_blackbox(const StateTransitionSystem& sts, std::size_t horizon, std::size_t budget = 1'000'000);

/// Same, over a caller-supplied alphabet.
Behavior derive_blackbox(const StateTransitionSystem& sts, const std::vector<InputSymbol>& alphabet,
                         std::size_t horizon, std::size_t budget = 1'000'000);

/// True iff some run of `sts` on `input` produces exactly `output`.
bool can_produce(const StateTransitionSystem& sts, const InputStream& input, const OutputStream& output);

}  // namespace umlsem::elab
