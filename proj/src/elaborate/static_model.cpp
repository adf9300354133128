#include "umlsem/elaborate/static_model.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace umlsem::elab {

bool StaticModel::is_abstract(const ClassName& c) const {
  auto it = classes.find(c);
  if (it == classes.end()) throw Error(ErrorKind::UnknownClass, "unknown class '" + c + "'");
  return it->second.is_abstract;
}

const Signature& StaticModel::signature(const ClassName& c) const {
  auto it = signatures.find(c);
  if (it == signatures.end()) throw Error(ErrorKind::UnknownClass, "unknown class '" + c + "'");
  return it->second;
}

const AssociationInfo* StaticModel::association(const std::string& name) const {
  for (const auto& a : associations) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

std::vector<LinkField> StaticModel::link_fields(const ClassName& c) const {
  std::vector<LinkField> out;
  if (!has_class(c)) return out;
  for (const auto& a : associations) {
    for (int s = 0; s < 2; ++s) {
      if (!has_class(a.cls[s]) || !is_subclass(c, a.cls[s])) continue;
      std::string display = a.name + "." + a.cls[1 - s];
      if (a.cls[0] == a.cls[1]) display += "[" + std::to_string(s) + "]";
      out.push_back({LinkEnd{a.name, s}, a.cls[1 - s], a.mult[1 - s], display});
    }
  }
  return out;
}

std::vector<LinkField> StaticModel::fields_named(const ClassName& c, const std::string& name) const {
  std::string assoc = name;
  std::string far;
  if (auto dot = name.find('.'); dot != std::string::npos) {
    assoc = name.substr(0, dot);
    far = name.substr(dot + 1);
  }
  std::vector<LinkField> out;
  for (auto& f : link_fields(c)) {
    if (f.end.association == assoc && (far.empty() || f.far_class == far || f.display == name)) out.push_back(f);
  }
  return out;
}

std::optional<int> StaticModel::side_of(const AssociationInfo& a, const ClassName& c, const ClassName& other) const {
  auto fits = [&](const ClassName& x, const ClassName& y) {
    return has_class(x) && has_class(y) && is_subclass(c, x) && is_subclass(other, y);
  };
  if (fits(a.cls[0], a.cls[1])) return 0;
  if (fits(a.cls[1], a.cls[0])) return 1;
  return std::nullopt;
}

namespace {

SourcePos member_pos(const dsl::ClassModelAst& ast, const ClassName& cls, const std::string& member) {
  if (const auto* c = ast.find_class(cls)) {
    for (const auto& a : c->attributes) {
      if (a.name == member) return a.pos;
    }
    for (const auto& o : c->operations) {
      if (o.name == member) return o.pos;
    }
    return c->pos;
  }
  return {};
}

StaticModel build(const dsl::ClassModelAst& ast) {
  StaticModel m;
  for (const auto& c : ast.classes) {
    ClassEntry e;
    e.name = c.name;
    e.is_abstract = c.is_abstract;
    e.pos = c.pos;
    for (const auto& a : c.attributes) e.declared.attributes[a.name] = a.type;
    for (const auto& o : c.operations) e.declared.methods[o.name] = o.sig;
    m.classes.emplace(c.name, std::move(e));
  }
  for (const auto& g : ast.generalizations) {
    auto it = m.classes.find(g.sub);
    if (it == m.classes.end()) throw ResolveError(g.sub, g.pos, "undeclared class");
    if (!m.classes.count(g.super)) throw ResolveError(g.super, g.pos, "undeclared class");
    auto& supers = it->second.supers;
    if (std::find(supers.begin(), supers.end(), g.super) == supers.end()) supers.push_back(g.super);
  }
  m.inheritance = InheritanceRelation::from_table(m.classes);

  for (const auto& group : m.inheritance.cycles()) {
    std::string subject;
    for (const auto& c : group) subject += (subject.empty() ? "" : ", ") + c;
    SourcePos pos;
    for (const auto& g : ast.generalizations) {
      bool in_sub = std::find(group.begin(), group.end(), g.sub) != group.end();
      bool in_super = std::find(group.begin(), group.end(), g.super) != group.end();
      if (in_sub && in_super) {
        pos = g.pos;
        break;
      }
    }
    m.issues.push_back({StaticIssue::Kind::CyclicInheritance, subject, "cyclic inheritance among " + subject, pos});
  }

  std::set<std::tuple<std::string, ClassName, ClassName>> reported;
  for (const auto& [name, entry] : m.classes) {
    std::vector<SignatureClash> clashes;
    m.signatures[name] = effective_signature(m.classes, m.inheritance, name, clashes);
    for (const auto& cl : clashes) {
      if (!reported.insert({cl.member, cl.declared_in, cl.conflicts_with}).second) continue;
      m.issues.push_back({StaticIssue::Kind::SignatureConflict, cl.declared_in + "." + cl.member,
                          "member '" + cl.member + "' of " + cl.declared_in + " changes the type inherited from " +
                              cl.conflicts_with,
                          member_pos(ast, cl.declared_in, cl.member)});
    }
  }

  for (const auto& a : ast.associations) {
    AssociationInfo info;
    info.name = a.name;
    info.kind = a.kind;
    info.cls = {a.a.cls, a.b.cls};
    info.mult = {a.a.mult, a.b.mult};
    info.end_pos = {a.a.pos, a.b.pos};
    info.pos = a.pos;
    if (a.kind == dsl::AssociationKind::Composition && (!a.a.mult.upper || *a.a.mult.upper > 1)) {
      m.issues.push_back({StaticIssue::Kind::CompositionMultiplicity, a.name,
                          "composition '" + a.name + "' allows " + a.a.mult.to_string() + " aggregates per part",
                          a.a.pos.valid() ? a.a.pos : a.pos});
    }
    m.associations.push_back(std::move(info));
  }

  for (const auto& c : ast.constraints) m.constraints.push_back({c.name, c.cls, c.predicate, c.pos});
  return m;
}

}  // namespace

StaticModel elaborate_static(const dsl::ClassModelAst& ast) {
  StaticModel m = build(ast);
  if (!m.issues.empty()) {
    const auto& i = m.issues.front();
    ErrorKind k = i.kind == StaticIssue::Kind::SignatureConflict    ? ErrorKind::SignatureConflict
                  : i.kind == StaticIssue::Kind::CyclicInheritance ? ErrorKind::CyclicInheritance
                                                                   : ErrorKind::CompositionMultiplicity;
    throw Error(k, i.message, i.pos);
  }
  return m;
}

StaticModel elaborate_static_lenient(const dsl::ClassModelAst& ast) { return build(ast); }

}  // namespace umlsem::elab
