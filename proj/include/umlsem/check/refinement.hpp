#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "umlsem/core/behavior.hpp"
#include "umlsem/core/sts.hpp"

namespace umlsem::check {

struct Counterexample {
  InputStream input;
  /// Produced by the concrete STS, not by the abstract one.
  OutputStream output;
};

struct RefinementVerdict {
  enum class Status { Holds, Fails, Inconclusive };

  Status status = Status::Holds;
  std::size_t horizon = 0;
  std::optional<Counterexample> counterexample;
  std::size_t streams_checked = 0;
  std::string note;

  bool holds() const { return status == Status::Holds; }
};

const char* to_string(RefinementVerdict::Status s);

/// Bounded refinement: for every input stream over the abstract STS's
/// alphabet up to `horizon`, every output stream of `concrete` is one of
/// `abstract`. Budget exhaustion yields Inconclusive.
RefinementVerdict check_refinement(const StateTransitionSystem& abstract, const StateTransitionSystem& concrete,
                                   std::size_t horizon, std::size_t budget = 1'000'000);

}  // namespace umlsem::check
