#include "umlsem/conform/automaton.hpp"

namespace umlsem::conform {

std::string AbstractTransition::to_string() const {
  std::string out = direction == Direction::Output ? "!" : "?";
  out += peer + "." + selector;
  if (!args.empty()) {
    out += "(";
    for (std::size_t i = 0; i < args.size(); ++i) out += (i ? ", " : "") + args[i].to_string();
    out += ")";
  }
  return out;
}

std::map<std::string, AbstractAutomaton> derive_automata(const dsl::SequenceDiagramAst& seq) {
  std::map<std::string, AbstractAutomaton> out;
  for (const auto& l : seq.lifelines) out[l.role] = AbstractAutomaton{l.role, l.cls, {}};
  for (std::size_t i = 0; i < seq.interactions.size(); ++i) {
    const auto& x = seq.interactions[i];
    using D = AbstractTransition::Direction;
    out.at(x.sender).transitions.push_back({D::Output, x.receiver, x.selector, x.args, i, x.pos});
    out.at(x.receiver).transitions.push_back({D::Input, x.sender, x.selector, x.args, i, x.pos});
  }
  return out;
}

namespace {

bool input_compatible(const MessagePattern& p, const std::vector<ArgPattern>& wanted) {
  if (p.any_args || wanted.empty()) return true;
  if (p.args.size() != wanted.size()) return false;
  for (std::size_t i = 0; i < wanted.size(); ++i) {
    if (wanted[i].kind == ArgPattern::Kind::Literal && !p.args[i].matches(wanted[i].literal)) return false;
  }
  return true;
}

bool output_compatible(const OutputAction& o, const std::vector<ArgPattern>& wanted) {
  if (wanted.empty()) return true;
  if (o.args.size() != wanted.size()) return false;
  for (std::size_t i = 0; i < wanted.size(); ++i) {
    if (wanted[i].kind == ArgPattern::Kind::Literal && o.args[i].kind == ValueExpr::Kind::Literal &&
        o.args[i].literal != wanted[i].literal)
      return false;
  }
  return true;
}

bool related(const elab::StaticModel& model, const ClassName& a, const ClassName& b) {
  if (!model.has_class(a) || !model.has_class(b)) return false;
  return model.is_subclass(a, b) || model.is_subclass(b, a);
}

}  // namespace

TransitionMapping map_abstract_transitions(const std::map<std::string, AbstractAutomaton>& autos,
                                           const sim::StsMap& stss, const elab::StaticModel& model) {
  TransitionMapping out;
  for (const auto& [role, a] : autos) {
    if (!model.has_class(a.cls)) {
      throw Error(ErrorKind::UnknownRoleClass, "lifeline '" + role + "' has unknown class '" + a.cls + "'");
    }
    auto it = stss.find(a.cls);
    if (it == stss.end()) {
      throw Error(ErrorKind::UnknownRoleClass, "lifeline '" + role + "' class '" + a.cls + "' has no state diagram");
    }
    const auto& sts = it->second;
    for (std::size_t i = 0; i < a.transitions.size(); ++i) {
      const auto& at = a.transitions[i];
      const ClassName* peer_cls = nullptr;
      if (auto p = autos.find(at.peer); p != autos.end()) peer_cls = &p->second.cls;
      std::vector<std::size_t> matches;
      for (std::size_t t = 0; t < sts.delta.size(); ++t) {
        const auto& tr = sts.delta[t];
        bool hit = false;
        if (at.direction == AbstractTransition::Direction::Input) {
          hit = tr.input && tr.input->selector == at.selector && input_compatible(*tr.input, at.args);
        } else {
          for (const auto& o : tr.outputs) {
            if (o.selector != at.selector || !output_compatible(o, at.args)) continue;
            bool target_ok = true;
            if (peer_cls && o.target.kind == SendTarget::Kind::Link) {
              target_ok = false;
              for (const auto& f : model.fields_named(a.cls, o.target.name)) target_ok |= related(model, f.far_class, *peer_cls);
            } else if (peer_cls && o.target.kind == SendTarget::Kind::Create) {
              target_ok = related(model, o.target.name, *peer_cls);
            }
            if (target_ok) {
              hit = true;
              break;
            }
          }
        }
        if (hit) matches.push_back(t);
      }
      if (matches.empty()) {
        out.defects.push_back({role, i, "no concrete transition of " + a.cls + " realizes " + at.to_string(), at.pos});
      }
      out.concrete[{role, i}] = std::move(matches);
    }
  }
  return out;
}

}  // namespace umlsem::conform
