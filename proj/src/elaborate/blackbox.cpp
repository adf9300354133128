#include "umlsem/elaborate/blackbox.hpp"

#include <set>

#include "umlsem/source.hpp"

namespace umlsem::elab {

namespace {

std::vector<std::string> render(const StsTransition& t, const std::map<std::string, Value>& binding,
                                const std::map<std::string, Value>& valuation) {
  std::vector<std::string> out;
  for (const auto& o : t.outputs) out.push_back(o.render(binding, valuation));
  return out;
}

using Config = std::pair<std::size_t, OutputStream>;

class Deriver {
 public:
  Deriver(const StateTransitionSystem& sts, const std::vector<InputSymbol>& alphabet, std::size_t horizon,
          std::size_t budget)
      : sts_(sts), alphabet_(alphabet), horizon_(horizon), budget_(budget) {
    ticks_.push_back(std::nullopt);
    for (const auto& a : alphabet_) ticks_.push_back(a);
  }

  Behavior run() {
    Behavior b;
    b.horizon = horizon_;
    std::set<Config> start;
    for (std::size_t s : sts_.initial) start.insert({s, {}});
    InputStream prefix;
    walk(prefix, start, b);
    return b;
  }

 private:
  void walk(InputStream& prefix, const std::set<Config>& configs, Behavior& b) {
    auto& outs = b.relation[prefix];
    for (const auto& c : configs) outs.insert(c.second);
    if (prefix.size() == horizon_) return;
    for (const auto& tick : ticks_) {
      std::set<Config> next;
      for (const auto& [state, out] : configs) {
        for (auto& [dst, emitted] : tick_successors(sts_, state, tick)) {
          auto extended = out;
          extended.push_back(std::move(emitted));
          next.insert({dst, std::move(extended)});
        }
      }
      generated_ += next.size() + 1;
      if (generated_ > budget_) {
        throw Error(ErrorKind::HorizonTooLarge, "black-box derivation of " + sts_.owner + " at horizon " +
                                                    std::to_string(horizon_) + " exceeds the budget of " +
                                                    std::to_string(budget_) + " configurations");
      }
      prefix.push_back(tick);
      walk(prefix, next, b);
      prefix.pop_back();
    }
  }

  const StateTransitionSystem& sts_;
  const std::vector<InputSymbol>& alphabet_;
  std::vector<InputTick> ticks_;
  std::size_t horizon_;
  std::size_t budget_;
  std::size_t generated_ = 0;
};

}  // namespace

std::vector<std::pair<std::size_t, std::vector<std::string>>> tick_successors(const StateTransitionSystem& sts,
                                                                              std::size_t state,
                                                                              const InputTick& input) {
  std::set<std::pair<std::size_t, std::vector<std::string>>> out;
  const auto& valuation = sts.states.at(state).valuation;
  if (!input) {
    out.insert({state, {}});
    for (std::size_t t : sts.spontaneous(state)) {
      out.insert({sts.delta[t].destination, render(sts.delta[t], {}, valuation)});
    }
  } else {
    for (std::size_t t : sts.enabled(state, *input)) {
      const auto& tr = sts.delta[t];
      out.insert({tr.destination, render(tr, tr.input->bind(input->args), valuation)});
    }
  }
  return {out.begin(), out.end()};
}

Behavior derive_blackbox(const StateTransitionSystem& sts, std::size_t horizon, std::size_t budget) {
  return derive_blackbox(sts, sts.alphabet, horizon, budget);
}

Behavior derive_blackbox(const StateTransitionSystem& sts, const std::vector<InputSymbol>& alphabet,
                         std::size_t horizon, std::size_t budget) {
  return Deriver(sts, alphabet, horizon, budget).run();
}

bool can_produce(const StateTransitionSystem& sts, const InputStream& input, const OutputStream& output) {
  if (input.size() != output.size()) return false;
  std::set<std::size_t> current(sts.initial.begin(), sts.initial.end());
  for (std::size_t i = 0; i < input.size() && !current.empty(); ++i) {
    std::set<std::size_t> next;
    for (std::size_t s : current) {
      for (const auto& [dst, emitted] : tick_successors(sts, s, input[i])) {
        if (emitted == output[i]) next.insert(dst);
      }
    }
    current = std::move(next);
  }
  return !current.empty();
}

}  // namespace umlsem::elab
