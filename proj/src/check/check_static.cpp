#include "umlsem/check/check_static.hpp"

#include <set>

namespace umlsem::check {

std::vector<Violation> check_static(const elab::StaticModel& model, const std::vector<dsl::StateDiagramAst>& diagrams,
                                    const std::vector<dsl::SnapshotAst>& snapshots) {
  std::vector<Violation> out;
  for (const auto& i : model.issues) {
    switch (i.kind) {
      case elab::StaticIssue::Kind::SignatureConflict:
        out.push_back(make_violation("SIG-EXT", i.subject, i.pos, i.message));
        break;
      case elab::StaticIssue::Kind::CyclicInheritance:
        out.push_back(make_violation("INH-CYCLE", i.subject, i.pos, i.message));
        break;
      case elab::StaticIssue::Kind::CompositionMultiplicity:
        out.push_back(make_violation("COMP-MULT", i.subject, i.pos, i.message));
        break;
    }
  }

  std::set<ClassName> described;
  for (const auto& d : diagrams) {
    SourcePos head{d.document, 1, 1};
    if (d.owner.empty()) {
      out.push_back(make_violation("STD-OWNER", d.document, head, "state diagram does not name its class"));
      continue;
    }
    if (!model.has_class(d.owner)) {
      out.push_back(make_violation("STD-OWNER", d.owner, head, "state diagram for undeclared class '" + d.owner + "'"));
      continue;
    }
    if (!described.insert(d.owner).second) {
      out.push_back(make_violation("STD-OWNER", d.owner, head, "class '" + d.owner + "' already has a state diagram"));
    }
    const auto& sig = model.signature(d.owner);
    std::set<std::string> returns;
    for (const auto& t : d.transitions) {
      for (const auto& s : t.sends) {
        if (s.call) returns.insert(s.selector + "_return");
      }
    }
    for (const auto& t : d.transitions) {
      if (!t.event) {
        out.push_back(make_violation("STD-SPONT", d.owner + ": " + t.source + " -> " + t.destination, t.pos,
                                     "transition fires without consuming a message"));
        continue;
      }
      if (!sig.methods.count(t.event->selector) && !returns.count(t.event->selector)) {
        out.push_back(make_violation("EVT-SEL", d.owner + "." + t.event->selector, t.event->pos,
                                     "event '" + t.event->selector + "' is not an operation of " + d.owner));
      }
    }
  }

  for (const auto& s : snapshots) {
    for (const auto& o : s.objects) {
      if (model.has_class(o.cls) && model.is_abstract(o.cls)) {
        out.push_back(make_violation("ABS-INST", o.name, o.pos,
                                     "object '" + o.name + "' instantiates abstract class " + o.cls));
      }
    }
  }
  sort_violations(out);
  return out;
}

SnapshotState snapshot_state(const elab::StaticModel& model, const dsl::SnapshotAst& snapshot) {
  SnapshotState out;
  std::map<std::string, ObjectId> ids;
  std::map<ClassName, std::uint64_t> next;
  for (const auto& o : snapshot.objects) {
    if (!model.has_class(o.cls)) throw ResolveError(o.cls, o.pos, "undeclared class");
    ObjectId id{o.cls, next[o.cls]++, std::nullopt};
    ids[o.name] = id;
    out.names[id] = o.name;
    out.state.origins[id] = o.pos;
  }
  for (const auto& o : snapshot.objects) {
    ObjectState os;
    for (const auto& [name, type] : model.signature(o.cls).attributes) os.attributes[name] = type.default_value();
    for (const auto& b : o.bindings) {
      if (b.object_ref) {
        auto it = ids.find(*b.object_ref);
        if (it == ids.end()) throw ResolveError(*b.object_ref, b.pos, "undeclared object");
        os.attributes[b.attribute] = Value::ref(it->second);
      } else {
        os.attributes[b.attribute] = b.value;
      }
    }
    out.state.alive[ids.at(o.name)] = std::move(os);
  }
  for (const auto& l : snapshot.links) {
    const auto* a = model.association(l.association);
    if (!a) throw ResolveError(l.association, l.pos, "undeclared association");
    auto from = ids.find(l.from);
    auto to = ids.find(l.to);
    if (from == ids.end()) throw ResolveError(l.from, l.pos, "undeclared object");
    if (to == ids.end()) throw ResolveError(l.to, l.pos, "undeclared object");
    auto side = model.side_of(*a, from->second.cls, to->second.cls);
    if (!side) throw ResolveError(l.association, l.pos, "association does not join these objects");
    out.state.alive[from->second].links[LinkEnd{a->name, *side}].insert(to->second);
    if (l.bidirectional) out.state.alive[to->second].links[LinkEnd{a->name, 1 - *side}].insert(from->second);
  }
  return out;
}

}  // namespace umlsem::check
