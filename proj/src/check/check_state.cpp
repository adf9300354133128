#include <set>

#include "umlsem/check/check_static.hpp"
#include "umlsem/elaborate/expr_eval.hpp"

namespace umlsem::check {

namespace {

std::string name_of(const ObjectId& id, const std::map<ObjectId, std::string>& names) {
  auto it = names.find(id);
  return it == names.end() ? id.to_string() : it->second;
}

SourcePos pos_of(const SystemState& s, const ObjectId& id) {
  auto it = s.origins.find(id);
  return it == s.origins.end() ? SourcePos{} : it->second;
}

const std::set<ObjectId>& links_at(const ObjectState& os, const LinkEnd& end) {
  static const std::set<ObjectId> none;
  auto it = os.links.find(end);
  return it == os.links.end() ? none : it->second;
}

}  // namespace

std::vector<Violation> check_state(const SystemState& state, const elab::StaticModel& model,
                                   const std::map<ObjectId, std::string>& names) {
  std::vector<Violation> out;

  // Parts held by more than one aggregate, per composition.
  std::set<std::pair<ObjectId, std::string>> shared;
  for (const auto& a : model.associations) {
    if (a.kind != dsl::AssociationKind::Composition) continue;
    std::map<ObjectId, std::set<ObjectId>> holders;
    for (const auto& [id, os] : state.alive) {
      for (const auto& part : links_at(os, LinkEnd{a.name, 0})) holders[part].insert(id);
      for (const auto& whole : links_at(os, LinkEnd{a.name, 1})) holders[id].insert(whole);
    }
    for (const auto& [part, wholes] : holders) {
      if (wholes.size() < 2) continue;
      shared.insert({part, a.name});
      std::string list;
      for (const auto& w : wholes) list += (list.empty() ? "" : ", ") + name_of(w, names);
      out.push_back(make_violation("COMP-SHARE", name_of(part, names), pos_of(state, part),
                                   "part '" + name_of(part, names) + "' is shared by " + list + " under composition " +
                                       a.name));
    }
  }

  for (const auto& [id, os] : state.alive) {
    if (!model.has_class(id.cls)) continue;
    const std::string me = name_of(id, names);
    const SourcePos pos = pos_of(state, id);
    auto fields = model.link_fields(id.cls);
    for (const auto& [end, targets] : os.links) {
      bool known = false;
      for (const auto& f : fields) known |= f.end == end;
      if (!known && !targets.empty()) {
        out.push_back(make_violation("LINK-TYPE", me, pos,
                                     me + " holds links of " + end.association + " but its class takes no part in it"));
      }
    }
    for (const auto& f : fields) {
      const auto& targets = links_at(os, f.end);
      for (const auto& t : targets) {
        const std::string other = name_of(t, names);
        if (!model.has_class(t.cls) || !model.is_subclass(t.cls, f.far_class)) {
          out.push_back(make_violation("LINK-TYPE", me + " -> " + other, pos,
                                       other + " is not a " + f.far_class + " (" + f.display + ")"));
        }
        auto back = state.alive.find(t);
        if (back == state.alive.end() || !links_at(back->second, LinkEnd{f.end.association, 1 - f.end.side}).count(id)) {
          out.push_back(make_violation("LINK-ASYM", me + " -> " + other, pos,
                                       me + " is linked to " + other + " via " + f.end.association +
                                           " but not the other way round"));
        }
      }
      if (!f.mult.admits(targets.size())) {
        bool over = f.mult.upper && targets.size() > *f.mult.upper;
        if (over && f.end.side == 1 && shared.count({id, f.end.association})) continue;
        out.push_back(make_violation("MULT", me + "." + f.display, pos,
                                     me + " has " + std::to_string(targets.size()) + " link(s) in " + f.display +
                                         ", multiplicity " + f.mult.to_string()));
      }
    }
  }

  for (const auto& c : model.constraints) {
    if (!model.has_class(c.cls)) continue;
    for (const auto& [id, os] : state.alive) {
      if (!model.has_class(id.cls) || !model.is_subclass(id.cls, c.cls)) continue;
      const std::string me = name_of(id, names);
      auto name = [&](const std::string& n) -> Value {
        auto it = os.attributes.find(n);
        if (it == os.attributes.end()) throw Error(ErrorKind::GuardType, "unknown attribute '" + n + "'", c.pos);
        return it->second;
      };
      auto card = [&](const std::string& n) -> std::int64_t {
        auto fs = model.fields_named(id.cls, n);
        if (fs.empty()) throw Error(ErrorKind::GuardType, "unknown association end '" + n + "'", c.pos);
        std::int64_t total = 0;
        for (const auto& f : fs) total += static_cast<std::int64_t>(links_at(os, f.end).size());
        return total;
      };
      try {
        Value v = elab::evaluate(c.predicate, name, card);
        if (!v.is_bool() || !v.as_bool()) {
          out.push_back(make_violation("CONSTRAINT", me, pos_of(state, id).valid() ? pos_of(state, id) : c.pos,
                                       "constraint " + c.name + " does not hold for " + me));
        }
      } catch (const Error& e) {
        out.push_back(make_violation("CONSTRAINT", me, c.pos,
                                     "constraint " + c.name + " cannot be evaluated for " + me + ": " + e.detail()));
      }
    }
  }
  sort_violations(out);
  return out;
}

}  // namespace umlsem::check
