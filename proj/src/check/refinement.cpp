#include "umlsem/check/refinement.hpp"

#include <map>
#include <set>

#include "umlsem/elaborate/blackbox.hpp"

namespace umlsem::check {

const char* to_string(RefinementVerdict::Status s) {
  switch (s) {
    case RefinementVerdict::Status::Holds: return "holds";
    case RefinementVerdict::Status::Fails: return "fails";
    case RefinementVerdict::Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

using Successors = std::vector<std::pair<std::size_t, std::vector<std::string>>>;

/// tick_successors memoized per (state, tick index).
class SuccessorCache {
 public:
  SuccessorCache(const StateTransitionSystem& sts, const std::vector<InputTick>& ticks)
      : sts_(sts), ticks_(ticks), cache_(sts.states.size() * ticks.size()) {}

  const Successors& get(std::size_t state, std::size_t tick) {
    auto& slot = cache_[state * ticks_.size() + tick];
    if (!slot) slot = elab::tick_successors(sts_, state, ticks_[tick]);
    return *slot;
  }

 private:
  const StateTransitionSystem& sts_;
  const std::vector<InputTick>& ticks_;
  std::vector<std::optional<Successors>> cache_;
};

// A concrete state together with every abstract state that can have
// produced the same output prefix. One representative output prefix is kept
// per pair; all of them have the same futures.
using Key = std::pair<std::size_t, std::vector<std::size_t>>;

struct Prefix {
  InputStream input;
  std::map<Key, OutputStream> nodes;
};

}  // namespace

RefinementVerdict check_refinement(const StateTransitionSystem& abstract, const StateTransitionSystem& concrete,
                                   std::size_t horizon, std::size_t budget) {
  RefinementVerdict v;
  v.horizon = horizon;
  std::vector<InputTick> ticks{std::nullopt};
  for (const auto& a : abstract.alphabet) ticks.emplace_back(a);
  SuccessorCache abstract_next(abstract, ticks), concrete_next(concrete, ticks);

  std::set<std::size_t> abstract_initial(abstract.initial.begin(), abstract.initial.end());
  Prefix root;
  for (std::size_t c : concrete.initial) {
    root.nodes.emplace(Key{c, {abstract_initial.begin(), abstract_initial.end()}}, OutputStream{});
  }
  v.streams_checked = 1;
  if (abstract_initial.empty() && !root.nodes.empty()) {
    v.status = RefinementVerdict::Status::Fails;
    v.counterexample = Counterexample{{}, {}};
    return v;
  }

  // Breadth-first over input prefixes, so the first counterexample found
  // has the shortest input stream.
  std::vector<Prefix> level{std::move(root)};
  std::size_t generated = 0;
  for (std::size_t depth = 0; depth < horizon; ++depth) {
    std::vector<Prefix> next_level;
    for (const auto& prefix : level) {
      for (std::size_t t = 0; t < ticks.size(); ++t) {
        Prefix next;
        next.input = prefix.input;
        next.input.push_back(ticks[t]);
        ++v.streams_checked;
        for (const auto& [key, out] : prefix.nodes) {
          for (const auto& [c, emitted] : concrete_next.get(key.first, t)) {
            std::set<std::size_t> matching;
            for (std::size_t a : key.second) {
              for (const auto& [a2, e2] : abstract_next.get(a, t)) {
                if (e2 == emitted) matching.insert(a2);
              }
            }
            OutputStream extended = out;
            extended.push_back(emitted);
            if (matching.empty()) {
              v.status = RefinementVerdict::Status::Fails;
              v.counterexample = Counterexample{next.input, std::move(extended)};
              return v;
            }
            next.nodes.emplace(Key{c, {matching.begin(), matching.end()}}, std::move(extended));
            if (++generated > budget) {
              v.status = RefinementVerdict::Status::Inconclusive;
              v.note = "refinement check at horizon " + std::to_string(horizon) + " exceeds the budget of " +
                       std::to_string(budget) + " configurations";
              return v;
            }
          }
        }
        next_level.push_back(std::move(next));
      }
    }
    level = std::move(next_level);
  }
  v.status = RefinementVerdict::Status::Holds;
  return v;
}

}  // namespace umlsem::check
