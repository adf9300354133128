#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "umlsem/conform/automaton.hpp"
#include "umlsem/simulate/run.hpp"

namespace umlsem::conform {

/// One entry of an object's projection: a message it received (in) or sent (out).
struct ProjectedEvent {
  bool out = false;
  sim::TraceEvent event;
};

/// Time-ordered sends and deliveries of `id`; within a tick deliveries come first.
std::vector<ProjectedEvent> project(const std::vector<sim::TraceEvent>& events, const ObjectId& id);
std::vector<ProjectedEvent> project(const sim::Execution& exec, const ObjectId& id);

/// Global: the diagram's interaction order also constrains send events across
/// lifelines. PerLifeline: only each lifeline's own chain order matters.
enum class Ordering { Global, PerLifeline };

const char* to_string(Ordering o);

enum class Verdict { Conforms, Fails, Inconclusive };

const char* to_string(Verdict v);

/// How a trace realizes the diagram: for each interaction, the index of its
/// send event and of its delivery event.
struct Realization {
  std::vector<std::size_t> sends;
  std::vector<std::size_t> deliveries;
};

/// Searches the trace for a realization of the diagram under `binding`.
/// `matched` receives the length of the longest realizable prefix.
std::optional<Realization> realize(const dsl::SequenceDiagramAst& seq, const std::map<std::string, ObjectId>& binding,
                                   const std::vector<sim::TraceEvent>& events, Ordering ordering,
                                   std::size_t* matched = nullptr);

struct ConformOptions {
  std::size_t horizon = 10;
  std::size_t budget = 1'000'000;
  unsigned threads = 1;
  Ordering ordering = Ordering::Global;
};

struct ConformanceReport {
  Verdict verdict = Verdict::Inconclusive;
  std::string diagram;
  std::size_t horizon = 0;
  std::size_t budget = 0;
  std::size_t runs = 0;
  bool incomplete = false;
  Ordering ordering = Ordering::Global;
  std::map<std::string, ObjectId> binding;
  std::map<std::string, AbstractAutomaton> automata;
  TransitionMapping mapping;
  std::optional<sim::Execution> witness;
  std::optional<Realization> realization;
  /// Ticks the witness needs: one past the last matched event.
  std::size_t witness_horizon = 0;
  /// Fails/inconclusive: first interaction no explored execution reached.
  std::optional<std::size_t> failing_interaction;
  /// "sender -> receiver: selector" of that interaction and where it is written.
  std::string failing_label;
  SourcePos failing_pos;
  std::vector<MappingDefect> defects;
};

/// Exemplary conformance: does some execution of the world realize the
/// diagram? Roles are bound to snapshot objects of the same name, or to
/// fresh objects of the lifeline's class. Throws Error(UnknownRoleClass).
ConformanceReport check_exemplary(const dsl::SequenceDiagramAst& seq, const sim::World& world,
                                  const ConformOptions& options = {});

/// Report as JSON; the witness is embedded as trace records.
std::string to_json(const ConformanceReport& report);
std::string to_text(const ConformanceReport& report);

}  // namespace umlsem::conform
