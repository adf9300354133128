#include "umlsem/simulate/world.hpp"

namespace umlsem::sim {

const char* to_string(Policy policy) { return policy == Policy::Concurrent ? "concurrent" : "sequential"; }

const StateTransitionSystem& World::sts_of(const ClassName& cls) const {
  auto it = stss->find(cls);
  if (it == stss->end()) throw Error(ErrorKind::NoSts, "class '" + cls + "' has no state transition system");
  return it->second;
}

namespace {

ObjectId allocate(World& w, const ClassName& cls, const SourcePos& pos) {
  const auto& model = *w.model;
  if (!model.has_class(cls)) throw Error(ErrorKind::UnknownClass, "unknown class '" + cls + "'", pos);
  if (model.is_abstract(cls)) {
    throw Error(ErrorKind::InitialStateEmpty, "abstract class '" + cls + "' has no instances", pos);
  }
  if (!w.stss->count(cls)) throw Error(ErrorKind::NoSts, "class '" + cls + "' has no state transition system", pos);
  ObjectId id{cls, w.next_index[cls]++, std::nullopt};
  w.state.origins[id] = pos;
  return id;
}

/// Attribute defaults overridden by `bound`; picks the initial STS state.
void install(World& w, const ObjectId& id, const std::map<std::string, Value>& bound, const SourcePos& pos) {
  const auto& sts = w.sts_of(id.cls);
  ObjectState os;
  for (const auto& [name, type] : w.model->signature(id.cls).attributes) os.attributes[name] = type.default_value();
  for (const auto& [name, v] : bound) os.attributes[name] = v;
  auto options = sts.initial_matching(bound);
  if (options.empty()) {
    throw Error(ErrorKind::InitialStateEmpty, "no initial state of '" + id.cls + "' fits " + id.to_string(), pos);
  }
  std::size_t pick = options.size() > 1 ? options[w.rng() % options.size()] : options.front();
  const auto& st = sts.states[pick];
  for (const auto& [name, v] : st.valuation) os.attributes[name] = v;
  os.control = st.control;
  w.sts_state[id] = pick;
  w.initial_options[id] = std::move(options);
  w.state.alive[id] = std::move(os);
}

}  // namespace

World init_world(const elab::StaticModel& model, const dsl::SnapshotAst& snapshot, const StsMap& stss,
                 std::uint64_t seed, Policy policy) {
  World w;
  w.model = std::make_shared<const elab::StaticModel>(model);
  w.stss = std::make_shared<const StsMap>(stss);
  w.seed = seed;
  w.policy = policy;
  w.rng.seed(seed);

  std::vector<ObjectId> ids;
  for (const auto& o : snapshot.objects) {
    ids.push_back(allocate(w, o.cls, o.pos));
    w.names[o.name] = ids.back();
  }
  for (std::size_t i = 0; i < snapshot.objects.size(); ++i) {
    const auto& o = snapshot.objects[i];
    std::map<std::string, Value> bound;
    for (const auto& b : o.bindings) {
      if (b.object_ref) {
        auto it = w.names.find(*b.object_ref);
        if (it == w.names.end()) throw ResolveError(*b.object_ref, b.pos, "undeclared object");
        bound[b.attribute] = Value::ref(it->second);
      } else {
        bound[b.attribute] = b.value;
      }
    }
    install(w, ids[i], bound, o.pos);
  }
  for (const auto& l : snapshot.links) {
    const auto* assoc = model.association(l.association);
    if (!assoc) throw ResolveError(l.association, l.pos, "undeclared association");
    auto from = w.names.find(l.from);
    auto to = w.names.find(l.to);
    if (from == w.names.end()) throw ResolveError(l.from, l.pos, "undeclared object");
    if (to == w.names.end()) throw ResolveError(l.to, l.pos, "undeclared object");
    auto side = model.side_of(*assoc, from->second.cls, to->second.cls);
    if (!side) throw ResolveError(l.association, l.pos, "association does not join these objects");
    w.state.alive[from->second].links[LinkEnd{assoc->name, *side}].insert(to->second);
    if (l.bidirectional) w.state.alive[to->second].links[LinkEnd{assoc->name, 1 - *side}].insert(from->second);
  }
  return w;
}

ObjectId add_object(World& world, const ClassName& cls, const std::string& name) {
  ObjectId id = allocate(world, cls, {});
  install(world, id, {}, {});
  world.names[name] = id;
  return id;
}

}  // namespace umlsem::sim
