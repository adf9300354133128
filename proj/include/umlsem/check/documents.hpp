#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "umlsem/check/refinement.hpp"
#include "umlsem/check/violation.hpp"
#include "umlsem/conform/conform.hpp"
#include "umlsem/dsl/ast.hpp"
#include "umlsem/simulate/world.hpp"

namespace umlsem::check {

struct RefinementQuery {
  /// Indices into DocumentSet::diagrams.
  std::size_t abstract = 0;
  std::size_t concrete = 0;
};

struct DocumentSet {
  std::optional<dsl::ClassModelAst> model;
  std::vector<dsl::StateDiagramAst> diagrams;
  std::vector<dsl::SnapshotAst> snapshots;
  std::vector<dsl::SequenceDiagramAst> sequences;
  std::vector<RefinementQuery> refinements;
};

struct CheckOptions {
  std::size_t horizon = 10;
  std::size_t budget = 1'000'000;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  sim::Policy policy = sim::Policy::Concurrent;
  std::optional<UnhandledPolicy> unhandled;
  /// Check integrity rules after every tick instead of only at quiescence.
  bool per_tick_constraints = false;
  conform::Ordering ordering = conform::Ordering::Global;
};

struct DocumentReport {
  enum class Verdict { Satisfiable, Violations, Inconclusive };

  Verdict verdict = Verdict::Satisfiable;
  std::size_t horizon = 0;
  std::vector<Violation> violations;
  std::vector<conform::ConformanceReport> conformance;
  std::vector<std::pair<RefinementQuery, RefinementVerdict>> refinements;
};

const char* to_string(DocumentReport::Verdict v);

/// Runs every check over the documents. "Satisfiable" means no violation
/// was found and every sequence diagram has a witness, up to the horizon.
DocumentReport check_documents(const DocumentSet& docs, const CheckOptions& options = {});

std::string to_json(const DocumentReport& report);
std::string to_text(const DocumentReport& report);

}  // namespace umlsem::check
