#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "umlsem/core/ids.hpp"
#include "umlsem/core/value.hpp"
#include "umlsem/source.hpp"

namespace umlsem {

struct Message {
  ObjectId sender;
  ObjectId receiver;
  std::string selector;
  std::vector<Value> args;
  bool creation = false;
  /// Synchronous call; the receiver replies with "<selector>_return".
  bool call = false;

  std::string to_string() const;
  auto operator<=>(const Message&) const = default;
};

/// Flattened diagram-state label: one leaf name per active concurrent region.
using FlatLabel = std::vector<std::string>;

std::string label_to_string(const FlatLabel& label);

/// One direction of a binary association as seen by the objects at `side`.
/// The field held by side-0 objects points at side-1 objects and vice versa.
struct LinkEnd {
  std::string association;
  int side = 0;

  auto operator<=>(const LinkEnd&) const = default;
};

struct ObjectState {
  FlatLabel control;
  std::map<std::string, Value> attributes;
  std::map<LinkEnd, std::set<ObjectId>> links;
  /// False between allocation by a creator and receipt of the first message.
  bool active = true;

  auto operator<=>(const ObjectState&) const = default;
};

struct SystemState {
  std::map<ObjectId, ObjectState> alive;
  std::uint64_t clock = 0;
  /// Where each object was introduced (snapshot object or creating send).
  std::map<ObjectId, SourcePos> origins;

  bool operator==(const SystemState& other) const { return alive == other.alive && clock == other.clock; }
};

/// Finite prefix of a timed stream: messages grouped by time unit, ordered
/// within each unit.
struct TimedStream {
  std::vector<std::vector<Message>> ticks;

  std::size_t total() const;
  /// Flattened in time order.
  std::vector<Message> messages() const;

  bool operator==(const TimedStream&) const = default;
};

}  // namespace umlsem
