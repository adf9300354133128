#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "umlsem/core/state.hpp"
#include "umlsem/core/value.hpp"
#include "umlsem/source.hpp"

namespace umlsem {

struct ArgPattern {
  enum class Kind { Wildcard, Binder, Literal };

  Kind kind = Kind::Wildcard;
  std::string binder;
  Value literal;

  static ArgPattern wildcard() { return {}; }
  static ArgPattern bind(std::string name) { return {Kind::Binder, std::move(name), {}}; }
  static ArgPattern lit(Value v) { return {Kind::Literal, {}, std::move(v)}; }

  bool matches(const Value& v) const { return kind != Kind::Literal || literal == v; }
  std::string to_string() const;

  auto operator<=>(const ArgPattern&) const = default;
};

/// Input message pattern. With `any_args` the pattern accepts every arity.
struct MessagePattern {
  std::string selector;
  std::vector<ArgPattern> args;
  bool any_args = false;

  bool matches(const std::string& sel, const std::vector<Value>& values) const;
  /// Binder name -> bound value for a matching message.
  std::map<std::string, Value> bind(const std::vector<Value>& values) const;
  std::string to_string() const;

  auto operator<=>(const MessagePattern&) const = default;
};

struct ValueExpr {
  enum class Kind { Literal, Binder, Attribute, Self };

  Kind kind = Kind::Literal;
  Value literal;
  std::string name;

  std::string to_string() const;
  auto operator<=>(const ValueExpr&) const = default;
};

struct SendTarget {
  enum class Kind { Link, Binder, Create };

  Kind kind = Kind::Link;
  /// Association name (optionally "assoc.FarClass"), binder name, or the
  /// class to instantiate.
  std::string name;

  auto operator<=>(const SendTarget&) const = default;
};

struct OutputAction {
  SendTarget target;
  std::string selector;
  std::vector<ValueExpr> args;
  bool call = false;

  /// Symbolic rendering under a binding; used for black-box output streams.
  std::string render(const std::map<std::string, Value>& binding,
                     const std::map<std::string, Value>& valuation) const;
  std::string to_string() const;

  auto operator<=>(const OutputAction&) const = default;
};

/// A concrete STS state: a flat control label plus the values of the
/// guard-relevant attributes.
struct StsState {
  FlatLabel control;
  std::map<std::string, Value> valuation;

  std::string to_string() const;
  auto operator<=>(const StsState&) const = default;
};

enum class TransitionOrigin { Diagram, Default, Chaos, Manual };

const char* to_string(TransitionOrigin origin);

struct StsTransition {
  std::size_t source = 0;
  /// nullopt: spontaneous, fires without consuming a message.
  std::optional<MessagePattern> input;
  std::vector<OutputAction> outputs;
  std::size_t destination = 0;
  TransitionOrigin origin = TransitionOrigin::Manual;
  /// Index of the diagram transition this was derived from, if any.
  std::optional<std::size_t> diagram_transition;
  std::string guard;
  SourcePos pos;

  /// Default (ignore) and chaos transitions only fire when no other
  /// transition accepts the message.
  bool fallback() const { return origin == TransitionOrigin::Default || origin == TransitionOrigin::Chaos; }
};

/// A concrete input message as seen by one object: selector and argument values.
struct InputSymbol {
  std::string selector;
  std::vector<Value> args;

  std::string to_string() const;
  auto operator<=>(const InputSymbol&) const = default;
};

enum class UnhandledPolicy { Ignore, Chaos };

const char* to_string(UnhandledPolicy policy);

/// Nondeterministic automaton (states, initial states, transition relation)
/// describing one class's state-box behavior.
class StateTransitionSystem {
 public:
  ClassName owner;
  std::vector<StsState> states;
  std::vector<std::size_t> initial;
  std::vector<StsTransition> delta;
  /// Concrete input messages the class accepts (finite representatives).
  std::vector<InputSymbol> alphabet;
  UnhandledPolicy policy = UnhandledPolicy::Ignore;
  /// Attributes whose values are part of the state.
  std::vector<std::string> relevant_attributes;

  /// Builds per-state indices and checks structural invariants
  /// (initial nonempty and in range, transition endpoints in range).
  void finalize();

  /// Transition indices that may fire in `state` on the given message:
  /// the non-fallback matches, or the fallback matches when there are none.
  std::vector<std::size_t> enabled(std::size_t state, const std::string& selector,
                                   const std::vector<Value>& args) const;
  std::vector<std::size_t> enabled(std::size_t state, const InputSymbol& sym) const {
    return enabled(state, sym.selector, sym.args);
  }
  std::vector<std::size_t> spontaneous(std::size_t state) const;

  std::optional<std::size_t> find_state(const FlatLabel& control,
                                        const std::map<std::string, Value>& attributes) const;
  /// Initial states whose valuation agrees with the given (partial) attributes.
  std::vector<std::size_t> initial_matching(const std::map<std::string, Value>& attributes) const;

  bool accepts_selector(const std::string& selector) const;
  std::size_t transition_count() const { return delta.size(); }

 private:
  std::vector<std::vector<std::size_t>> outgoing_;
  std::map<StsState, std::size_t> state_index_;
};

}  // namespace umlsem
