#include "umlsem/simulate/run.hpp"

#include <algorithm>

namespace umlsem::sim {

const char* to_string(TraceEvent::Kind kind) {
  switch (kind) {
    case TraceEvent::Kind::Send: return "send";
    case TraceEvent::Kind::Deliver: return "deliver";
    case TraceEvent::Kind::Create: return "create";
    case TraceEvent::Kind::Fire: return "fire";
  }
  return "?";
}

const char* to_string(Termination t) { return t == Termination::Horizon ? "horizon" : "quiescent"; }

namespace {

/// One way an object can act in the current tick: consume the head of a
/// buffer, or fire a spontaneous transition (empty buffer key).
struct Option {
  bool consume = false;
  std::pair<ObjectId, ObjectId> buffer;
};

using Inbox = std::map<ObjectId, std::vector<std::pair<ObjectId, ObjectId>>>;

Inbox inboxes(const World& w) {
  Inbox out;
  for (const auto& [key, queue] : w.medium) {
    if (!queue.empty()) out[key.second].push_back(key);
  }
  return out;
}

std::vector<Option> options_of(const World& w, const Inbox& inbox, const ObjectId& x) {
  std::vector<Option> out;
  const auto& os = w.state.alive.at(x);
  if (auto it = inbox.find(x); it != inbox.end()) {
    for (const auto& key : it->second) {
      // Objects still waiting for their creation message accept nothing else.
      if (!os.active && !w.medium.at(key).front().creation) continue;
      out.push_back({true, key});
    }
  }
  if (os.active && !w.sts_of(x.cls).spontaneous(w.sts_state.at(x)).empty()) out.push_back({false, {}});
  return out;
}

class Actor {
 public:
  Actor(World& w, Chooser& chooser, TickLog& log) : w_(w), chooser_(chooser), log_(log), tick_(w.state.clock) {}

  void act(const ObjectId& x, const Option& opt) {
    const auto& sts = w_.sts_of(x.cls);
    std::size_t s = w_.sts_state.at(x);
    std::vector<std::size_t> candidates;
    std::optional<Message> consumed;
    if (opt.consume) {
      auto& queue = w_.medium.at(opt.buffer);
      consumed = std::move(queue.front());
      queue.pop_front();
      if (queue.empty()) w_.medium.erase(opt.buffer);
      auto& os = w_.state.alive.at(x);
      if (consumed->creation) os.active = true;
      log_.events.push_back(event(TraceEvent::Kind::Deliver, *consumed));
      candidates = sts.enabled(s, consumed->selector, consumed->args);
    } else {
      candidates = sts.spontaneous(s);
    }
    if (!candidates.empty()) {
      const auto& t = sts.delta[candidates[chooser_.choose(candidates.size())]];
      std::map<std::string, Value> binding;
      if (consumed && t.input) binding = t.input->bind(consumed->args);
      auto& os = w_.state.alive.at(x);
      TraceEvent fire;
      fire.kind = TraceEvent::Kind::Fire;
      fire.tick = tick_;
      fire.from = fire.to = x;
      if (consumed) {
        fire.selector = consumed->selector;
        fire.args = consumed->args;
      }
      fire.source = os.control;
      fire.destination = sts.states[t.destination].control;
      fire.origin = to_string(t.origin);
      log_.events.push_back(std::move(fire));
      os.control = sts.states[t.destination].control;
      for (const auto& [name, v] : sts.states[t.destination].valuation) os.attributes[name] = v;
      w_.sts_state[x] = t.destination;
      for (const auto& o : t.outputs) emit(x, o, binding);
    }
    if (consumed && consumed->call) {
      post(Message{x, consumed->sender, consumed->selector + "_return", {}, false, false}, TraceEvent::Kind::Send);
    }
  }

  /// Enqueues this tick's messages; they become deliverable next tick.
  void flush() {
    for (auto& m : pending_) {
      auto key = std::make_pair(m.sender, m.receiver);
      w_.medium[key].push_back(std::move(m));
    }
    pending_.clear();
  }

 private:
  TraceEvent event(TraceEvent::Kind kind, const Message& m) const {
    TraceEvent e;
    e.kind = kind;
    e.tick = tick_;
    e.from = m.sender;
    e.to = m.receiver;
    e.selector = m.selector;
    e.args = m.args;
    e.call = m.call;
    e.creation = m.creation;
    return e;
  }

  void post(Message m, TraceEvent::Kind kind) {
    log_.events.push_back(event(kind, m));
    pending_.push_back(std::move(m));
  }

  Value eval(const ObjectId& x, const ValueExpr& e, const std::map<std::string, Value>& binding) const {
    switch (e.kind) {
      case ValueExpr::Kind::Literal: return e.literal;
      case ValueExpr::Kind::Binder: {
        auto it = binding.find(e.name);
        return it == binding.end() ? Value() : it->second;
      }
      case ValueExpr::Kind::Attribute: {
        const auto& attrs = w_.state.alive.at(x).attributes;
        auto it = attrs.find(e.name);
        return it == attrs.end() ? Value() : it->second;
      }
      case ValueExpr::Kind::Self: return Value::ref(x);
    }
    return {};
  }

  void emit(const ObjectId& x, const OutputAction& o, const std::map<std::string, Value>& binding) {
    std::vector<Value> args;
    for (const auto& a : o.args) args.push_back(eval(x, a, binding));
    switch (o.target.kind) {
      case SendTarget::Kind::Link: {
        std::set<ObjectId> receivers;
        const auto& links = w_.state.alive.at(x).links;
        for (const auto& f : w_.model->fields_named(x.cls, o.target.name)) {
          if (auto it = links.find(f.end); it != links.end()) receivers.insert(it->second.begin(), it->second.end());
        }
        for (const auto& r : receivers) post(Message{x, r, o.selector, args, false, o.call}, TraceEvent::Kind::Send);
        break;
      }
      case SendTarget::Kind::Binder: {
        auto it = binding.find(o.target.name);
        if (it != binding.end() && it->second.is_ref() && w_.state.alive.count(it->second.as_ref())) {
          post(Message{x, it->second.as_ref(), o.selector, args, false, o.call}, TraceEvent::Kind::Send);
        }
        break;
      }
      case SendTarget::Kind::Create: create(x, o.target.name, std::move(args)); break;
    }
  }

  void create(const ObjectId& creator, const ClassName& cls, std::vector<Value> args) {
    const auto& sts = w_.sts_of(cls);
    ObjectId id = allocate_created(creator, cls, w_.next_index[cls]++, w_.creations[creator]++);
    ObjectState os;
    for (const auto& [name, type] : w_.model->signature(cls).attributes) os.attributes[name] = type.default_value();
    std::size_t init = sts.initial[chooser_.choose(sts.initial.size())];
    os.control = sts.states[init].control;
    for (const auto& [name, v] : sts.states[init].valuation) os.attributes[name] = v;
    os.active = false;
    // The creator learns the new object through the first association
    // joining the two classes.
    for (const auto& a : w_.model->associations) {
      if (auto side = w_.model->side_of(a, creator.cls, cls)) {
        w_.state.alive.at(creator).links[LinkEnd{a.name, *side}].insert(id);
        os.links[LinkEnd{a.name, 1 - *side}].insert(creator);
        break;
      }
    }
    w_.state.alive[id] = std::move(os);
    w_.state.origins[id] = w_.state.origins.count(creator) ? w_.state.origins.at(creator) : SourcePos{};
    w_.sts_state[id] = init;
    post(Message{creator, id, "create", std::move(args), true, false}, TraceEvent::Kind::Create);
  }

  World& w_;
  Chooser& chooser_;
  TickLog& log_;
  std::uint64_t tick_;
  std::vector<Message> pending_;
};

void choose_initial_states(World& w, Chooser& chooser) {
  for (const auto& [id, options] : w.initial_options) {
    if (options.size() < 2 || !w.state.alive.count(id)) continue;
    std::size_t pick = options[chooser.choose(options.size())];
    const auto& st = w.sts_of(id.cls).states[pick];
    auto& os = w.state.alive.at(id);
    os.control = st.control;
    for (const auto& [name, v] : st.valuation) os.attributes[name] = v;
    w.sts_state[id] = pick;
  }
}

Execution run_in_place(World& w, std::size_t horizon, Chooser& chooser) {
  Execution exec;
  exec.initial = w.state;
  exec.trajectory.push_back(w.state);
  exec.termination = Termination::Horizon;
  while (exec.ticks < horizon) {
    TickLog log;
    if (!step(w, chooser, log)) {
      exec.termination = Termination::Quiescent;
      break;
    }
    ++exec.ticks;
    for (const auto& [id, os] : w.state.alive) {
      exec.inputs[id].ticks.resize(exec.ticks);
      exec.outputs[id].ticks.resize(exec.ticks);
    }
    for (const auto& e : log.events) {
      Message m{e.from, e.to, e.selector, e.args, e.creation, e.call};
      if (e.kind == TraceEvent::Kind::Deliver) {
        exec.inputs[e.to].ticks.back().push_back(std::move(m));
      } else if (e.kind == TraceEvent::Kind::Send || e.kind == TraceEvent::Kind::Create) {
        exec.outputs[e.from].ticks.back().push_back(std::move(m));
      }
    }
    exec.events.insert(exec.events.end(), log.events.begin(), log.events.end());
    exec.trajectory.push_back(w.state);
  }
  if (horizon == 0 && w.quiescent()) exec.termination = Termination::Quiescent;
  for (const auto& [key, queue] : w.medium) exec.in_flight.insert(exec.in_flight.end(), queue.begin(), queue.end());
  return exec;
}

}  // namespace

bool World::quiescent() const {
  auto inbox = inboxes(*this);
  for (const auto& [id, os] : state.alive) {
    if (!options_of(*this, inbox, id).empty()) return false;
  }
  return true;
}

bool step(World& world, Chooser& chooser, TickLog& log) {
  auto inbox = inboxes(world);
  std::vector<std::pair<ObjectId, std::vector<Option>>> ready;
  for (const auto& [id, os] : world.state.alive) {
    auto opts = options_of(world, inbox, id);
    if (!opts.empty()) ready.emplace_back(id, std::move(opts));
  }
  if (ready.empty()) {
    ++world.state.clock;
    return false;
  }
  Actor actor(world, chooser, log);
  if (world.policy == Policy::Sequential) {
    const auto& [id, opts] = ready[chooser.choose(ready.size())];
    actor.act(id, opts[chooser.choose(opts.size())]);
  } else {
    for (const auto& [id, opts] : ready) actor.act(id, opts[chooser.choose(opts.size())]);
  }
  actor.flush();
  ++world.state.clock;
  return true;
}

Execution run(const World& world, std::size_t horizon) {
  World w = world;
  RandomChooser chooser(w.rng);
  return run_in_place(w, horizon, chooser);
}

Execution run(const World& world, std::size_t horizon, Chooser& chooser, bool choose_initial) {
  World w = world;
  if (choose_initial) choose_initial_states(w, chooser);
  return run_in_place(w, horizon, chooser);
}

}  // namespace umlsem::sim
