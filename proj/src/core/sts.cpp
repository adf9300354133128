#include "umlsem/core/sts.hpp"

#include <algorithm>

namespace umlsem {

std::string ArgPattern::to_string() const {
  switch (kind) {
    case Kind::Wildcard: return "_";
    case Kind::Binder: return binder;
    case Kind::Literal: return literal.to_string();
  }
  return "_";
}

bool MessagePattern::matches(const std::string& sel, const std::vector<Value>& values) const {
  if (sel != selector) return false;
  if (any_args) return true;
  if (values.size() != args.size()) return false;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!args[i].matches(values[i])) return false;
  }
  return true;
}

std::map<std::string, Value> MessagePattern::bind(const std::vector<Value>& values) const {
  std::map<std::string, Value> out;
  for (std::size_t i = 0; i < args.size() && i < values.size(); ++i) {
    if (args[i].kind == ArgPattern::Kind::Binder) out[args[i].binder] = values[i];
  }
  return out;
}

std::string MessagePattern::to_string() const {
  if (any_args) return selector;
  std::string out = selector + "(";
  for (std::size_t i = 0; i < args.size(); ++i) out += (i ? ", " : "") + args[i].to_string();
  return out + ")";
}

std::string ValueExpr::to_string() const {
  switch (kind) {
    case Kind::Literal: return literal.to_string();
    case Kind::Binder:
    case Kind::Attribute: return name;
    case Kind::Self: return "self";
  }
  return "?";
}

std::string OutputAction::render(const std::map<std::string, Value>& binding,
                                 const std::map<std::string, Value>& valuation) const {
  auto value_text = [&](const ValueExpr& e) -> std::string {
    switch (e.kind) {
      case ValueExpr::Kind::Literal: return e.literal.to_string();
      case ValueExpr::Kind::Binder:
        if (auto it = binding.find(e.name); it != binding.end()) return it->second.to_string();
        return e.name;
      case ValueExpr::Kind::Attribute:
        if (auto it = valuation.find(e.name); it != valuation.end()) return it->second.to_string();
        return "@" + e.name;
      case ValueExpr::Kind::Self: return "self";
    }
    return "?";
  };
  std::string out;
  switch (target.kind) {
    case SendTarget::Kind::Link: out = (call ? "call " : "") + target.name + "." + selector; break;
    case SendTarget::Kind::Binder: {
      auto it = binding.find(target.name);
      out = (call ? "call " : "") + (it != binding.end() ? it->second.to_string() : target.name) + "." + selector;
      break;
    }
    case SendTarget::Kind::Create: out = "new " + target.name; break;
  }
  out += "(";
  for (std::size_t i = 0; i < args.size(); ++i) out += (i ? ", " : "") + value_text(args[i]);
  return out + ")";
}

std::string OutputAction::to_string() const { return render({}, {}); }

std::string StsState::to_string() const {
  std::string out = label_to_string(control);
  if (!valuation.empty()) {
    out += "{";
    bool first = true;
    for (const auto& [k, v] : valuation) {
      out += (first ? "" : ", ") + k + "=" + v.to_string();
      first = false;
    }
    out += "}";
  }
  return out;
}

const char* to_string(TransitionOrigin origin) {
  switch (origin) {
    case TransitionOrigin::Diagram: return "diagram";
    case TransitionOrigin::Default: return "default";
    case TransitionOrigin::Chaos: return "chaos";
    case TransitionOrigin::Manual: return "manual";
  }
  return "?";
}

const char* to_string(UnhandledPolicy policy) { return policy == UnhandledPolicy::Ignore ? "ignore" : "chaos"; }

std::string InputSymbol::to_string() const { return selector + "(" + join_values(args) + ")"; }

void StateTransitionSystem::finalize() {
  if (states.empty()) throw Error(ErrorKind::InitialStateEmpty, "state transition system of '" + owner + "' has no states");
  if (initial.empty()) throw Error(ErrorKind::InitialStateEmpty, "state transition system of '" + owner + "' has no initial state");
  outgoing_.assign(states.size(), {});
  state_index_.clear();
  for (std::size_t i = 0; i < states.size(); ++i) state_index_.emplace(states[i], i);
  for (std::size_t s : initial) {
    if (s >= states.size()) throw Error(ErrorKind::Precondition, "initial state out of range");
  }
  for (std::size_t t = 0; t < delta.size(); ++t) {
    if (delta[t].source >= states.size() || delta[t].destination >= states.size())
      throw Error(ErrorKind::Precondition, "transition endpoint out of range");
    outgoing_[delta[t].source].push_back(t);
  }
}

std::vector<std::size_t> StateTransitionSystem::enabled(std::size_t state, const std::string& selector,
                                                        const std::vector<Value>& args) const {
  std::vector<std::size_t> regular;
  std::vector<std::size_t> fallback;
  for (std::size_t t : outgoing_.at(state)) {
    const auto& tr = delta[t];
    if (!tr.input || !tr.input->matches(selector, args)) continue;
    (tr.fallback() ? fallback : regular).push_back(t);
  }
  return regular.empty() ? fallback : regular;
}

std::vector<std::size_t> StateTransitionSystem::spontaneous(std::size_t state) const {
  std::vector<std::size_t> out;
  for (std::size_t t : outgoing_.at(state)) {
    if (!delta[t].input) out.push_back(t);
  }
  return out;
}

std::optional<std::size_t> StateTransitionSystem::find_state(const FlatLabel& control,
                                                             const std::map<std::string, Value>& attributes) const {
  StsState key{control, {}};
  for (const auto& a : relevant_attributes) {
    auto it = attributes.find(a);
    if (it == attributes.end()) return std::nullopt;
    key.valuation.emplace(a, it->second);
  }
  auto it = state_index_.find(key);
  if (it == state_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> StateTransitionSystem::initial_matching(const std::map<std::string, Value>& attributes) const {
  std::vector<std::size_t> out;
  for (std::size_t s : initial) {
    bool ok = true;
    for (const auto& [name, value] : states[s].valuation) {
      auto it = attributes.find(name);
      if (it != attributes.end() && it->second != value) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(s);
  }
  return out;
}

bool StateTransitionSystem::accepts_selector(const std::string& selector) const {
  return std::any_of(alphabet.begin(), alphabet.end(), [&](const InputSymbol& s) { return s.selector == selector; });
}

}  // namespace umlsem
