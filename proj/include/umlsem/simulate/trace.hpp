#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "umlsem/simulate/run.hpp"

namespace umlsem::sim {

inline constexpr int kTraceVersion = 1;

/// Line-delimited JSON: a snapshot record for the initial state, then one
/// record per event in tick order.
std::string to_jsonl(const Execution& exec);

struct TraceLog {
  int version = 0;
  std::vector<ObjectId> objects;
  std::vector<TraceEvent> events;
};

/// Reads a trace written by to_jsonl. Object identifiers come back without
/// provenance tags. Throws Error(Syntax).
TraceLog parse_trace(std::string_view jsonl);

/// Parses "Class#index".
ObjectId parse_object_id(const std::string& text);

}  // namespace umlsem::sim
