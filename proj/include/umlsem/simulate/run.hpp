#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "umlsem/simulate/world.hpp"

namespace umlsem::sim {

struct TraceEvent {
  enum class Kind { Send, Deliver, Create, Fire };

  Kind kind = Kind::Send;
  std::uint64_t tick = 0;
  /// Send/Deliver/Create: message endpoints. Fire: the firing object in both.
  ObjectId from;
  ObjectId to;
  std::string selector;
  std::vector<Value> args;
  bool call = false;
  bool creation = false;
  /// Fire only: control labels before and after.
  FlatLabel source;
  FlatLabel destination;
  std::string origin;  // Fire: diagram/default/chaos

  bool operator==(const TraceEvent&) const = default;
};

const char* to_string(TraceEvent::Kind kind);

enum class Termination { Horizon, Quiescent };

const char* to_string(Termination t);

struct Execution {
  SystemState initial;
  /// initial followed by the state after every executed tick.
  std::vector<SystemState> trajectory;
  std::map<ObjectId, TimedStream> inputs;
  std::map<ObjectId, TimedStream> outputs;
  std::vector<TraceEvent> events;
  /// Messages still buffered when the run ended.
  std::vector<Message> in_flight;
  std::size_t ticks = 0;
  Termination termination = Termination::Horizon;
};

/// Source of scheduling and transition choices.
class Chooser {
 public:
  virtual ~Chooser() = default;
  /// An index in [0, n); n >= 1.
  virtual std::size_t choose(std::size_t n) = 0;
};

/// Draws from the world's seeded generator.
class RandomChooser : public Chooser {
 public:
  explicit RandomChooser(std::mt19937_64& rng) : rng_(rng) {}
  std::size_t choose(std::size_t n) override { return n <= 1 ? 0 : static_cast<std::size_t>(rng_() % n); }

 private:
  std::mt19937_64& rng_;
};

/// Events of one tick, in the order they happened.
struct TickLog {
  std::vector<TraceEvent> events;
};

/// Executes one tick. On a quiescent world only the clock advances and the
/// result is false.
bool step(World& world, Chooser& chooser, TickLog& log);

/// Steps a copy of `world` up to `horizon` ticks or quiescence, drawing
/// choices from the copy's seeded generator.
Execution run(const World& world, std::size_t horizon);

/// Same with explicit choices; `choose_initial` also lets the chooser pick
/// among each object's possible initial states.
Execution run(const World& world, std::size_t horizon, Chooser& chooser, bool choose_initial);

struct EnumerateOptions {
  std::size_t horizon = 0;
  /// Maximum number of runs explored.
  std::size_t budget = 1'000'000;
  unsigned threads = 1;
  /// Stop at the first execution (in exploration order) satisfying this.
  std::function<bool(const Execution&)> accept;
};

struct Enumeration {
  /// Distinct executions in exploration order.
  std::vector<Execution> executions;
  /// Budget ran out before every choice sequence was explored.
  bool incomplete = false;
  std::size_t runs = 0;
  std::optional<std::size_t> accepted;
};

/// Every execution over all initial-state, scheduler and transition choices
/// up to the horizon. The result does not depend on `threads`.
Enumeration enumerate_executions(const World& world, const EnumerateOptions& options);

}  // namespace umlsem::sim
