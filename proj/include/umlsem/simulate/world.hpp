#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "umlsem/core/state.hpp"
#include "umlsem/core/sts.hpp"
#include "umlsem/dsl/ast.hpp"
#include "umlsem/elaborate/static_model.hpp"

namespace umlsem::sim {

using StsMap = std::map<ClassName, StateTransitionSystem>;

/// Concurrent: every object may act in each tick. Sequential: exactly one.
enum class Policy { Concurrent, Sequential };

const char* to_string(Policy policy);

/// Per-(sender, receiver) FIFO buffers.
using Medium = std::map<std::pair<ObjectId, ObjectId>, std::deque<Message>>;

/// A closed system of objects plus the communication medium.
struct World {
  SystemState state;
  Medium medium;
  /// Current STS state of every alive object.
  std::map<ObjectId, std::size_t> sts_state;
  /// Initial STS states each snapshot object could have started in.
  std::map<ObjectId, std::vector<std::size_t>> initial_options;
  /// Next allocation index per class.
  std::map<ClassName, std::uint64_t> next_index;
  /// Creations performed so far per creator.
  std::map<ObjectId, std::uint64_t> creations;
  /// Snapshot object names.
  std::map<std::string, ObjectId> names;

  Policy policy = Policy::Concurrent;
  std::uint64_t seed = 0;
  std::mt19937_64 rng;

  std::shared_ptr<const elab::StaticModel> model;
  std::shared_ptr<const StsMap> stss;

  /// Throws Error(NoSts).
  const StateTransitionSystem& sts_of(const ClassName& cls) const;
  bool quiescent() const;
};

/// Installs the snapshot objects as the initially active set. Identifiers
/// are allocated per class in document order; each object starts in an
/// initial state of its class's STS chosen with the seeded generator.
/// Throws Error(NoSts | InitialStateEmpty | Resolve).
World init_world(const elab::StaticModel& model, const dsl::SnapshotAst& snapshot, const StsMap& stss,
                 std::uint64_t seed = 0, Policy policy = Policy::Concurrent);

/// Adds one more initially active object of class `cls` (used for roles
/// not bound to a snapshot object).
ObjectId add_object(World& world, const ClassName& cls, const std::string& name);

}  // namespace umlsem::sim
