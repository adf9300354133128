#include "umlsem/dsl/printer.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace umlsem::dsl {

namespace {

std::string last_segment(const std::string& qualified) {
  auto dot = qualified.rfind('.');
  return dot == std::string::npos ? qualified : qualified.substr(dot + 1);
}

std::string params(const std::vector<ArgPattern>& args) {
  std::string out = "(";
  for (std::size_t i = 0; i < args.size(); ++i) out += (i ? ", " : "") + args[i].to_string();
  return out + ")";
}

void print_class(std::ostringstream& os, const ClassDecl& c, const std::string& indent) {
  os << indent << (c.is_abstract ? "abstract " : "") << "class " << last_segment(c.name);
  if (c.attributes.empty() && c.operations.empty()) {
    os << " {}\n";
    return;
  }
  os << " {\n";
  for (const auto& a : c.attributes) os << indent << "  attr " << a.name << ": " << a.type.to_string() << "\n";
  for (const auto& op : c.operations) os << indent << "  op " << op.sig.to_string(op.name) << "\n";
  os << indent << "}\n";
}

}  // namespace

std::string print(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Literal: return e.literal.to_string();
    case Expr::Kind::Name: return e.name;
    case Expr::Kind::Cardinality: return "#" + e.name;
    case Expr::Kind::Not: return "!(" + print(e.operands.at(0)) + ")";
    case Expr::Kind::Neg: return "-(" + print(e.operands.at(0)) + ")";
    case Expr::Kind::Binary: return "(" + print(e.operands.at(0)) + " " + e.op + " " + print(e.operands.at(1)) + ")";
  }
  return "";
}

std::string print(const ClassModelAst& ast) {
  std::ostringstream os;
  // Package tree: each package prints its classes and direct subpackages.
  std::function<void(const std::string&, const std::string&)> emit = [&](const std::string& pkg,
                                                                         const std::string& indent) {
    for (const auto& c : ast.classes) {
      if (c.package == pkg) print_class(os, c, indent);
    }
    for (const auto& p : ast.packages) {
      auto dot = p.name.rfind('.');
      std::string parent = dot == std::string::npos ? std::string() : p.name.substr(0, dot);
      if (parent != pkg) continue;
      os << indent << "package " << last_segment(p.name) << " {\n";
      emit(p.name, indent + "  ");
      os << indent << "}\n";
    }
  };
  emit("", "");
  for (const auto& a : ast.associations) {
    os << "assoc " << a.name << " ";
    if (a.kind != AssociationKind::Plain) os << to_string(a.kind) << " ";
    os << a.a.cls << "[" << a.a.mult.to_string() << "] -- " << a.b.cls << "[" << a.b.mult.to_string() << "]";
    if (!a.attributes.empty()) {
      os << " {\n";
      for (const auto& attr : a.attributes) os << "  attr " << attr.name << ": " << attr.type.to_string() << "\n";
      os << "}";
    }
    os << "\n";
  }
  for (const auto& g : ast.generalizations) os << "gen " << g.sub << " < " << g.super << "\n";
  for (const auto& k : ast.constraints) os << "constraint " << k.name << " on " << k.cls << ": " << print(k.predicate) << "\n";
  return os.str();
}

std::string print(const StateDiagramAst& ast) {
  std::ostringstream os;
  if (!ast.owner.empty()) {
    os << "statechart " << ast.owner;
    if (ast.unhandled) os << " unhandled " << to_string(*ast.unhandled);
    os << "\n";
  }
  std::function<void(const DiagramState&, const std::string&)> body = [&](const DiagramState& s,
                                                                          const std::string& indent) {
    if (s.initial) os << indent << "initial " << *s.initial << "\n";
    for (const auto& ch : s.children) {
      os << indent << (ch.is_region ? "region" : "state");
      if (!ch.anonymous) os << " " << ch.name;
      if (ch.kind == DiagramState::Kind::Simple) {
        os << "\n";
        continue;
      }
      os << " {\n";
      body(ch, indent + "  ");
      os << indent << "}\n";
    }
  };
  body(ast.root, "");
  for (const auto& t : ast.transitions) {
    os << "trans " << t.source << " -> " << t.destination;
    if (t.event) {
      os << " on " << t.event->selector;
      if (!t.event->any_args) os << params(t.event->args);
    }
    if (t.guard) os << " [" << print(*t.guard) << "]";
    for (std::size_t i = 0; i < t.sends.size(); ++i) {
      const auto& s = t.sends[i];
      os << (i ? ", " : " / ");
      if (s.target.kind == SendTarget::Kind::Create) {
        os << "new " << s.target.name;
      } else {
        os << (s.call ? "call " : "") << s.target.name << "." << s.selector;
      }
      os << "(";
      for (std::size_t k = 0; k < s.args.size(); ++k) os << (k ? ", " : "") << s.args[k].to_string();
      os << ")";
    }
    os << "\n";
  }
  return os.str();
}

std::string print(const SequenceDiagramAst& ast) {
  std::ostringstream os;
  if (!ast.name.empty()) os << "seq " << ast.name << "\n";
  for (const auto& l : ast.lifelines) os << "lifeline " << l.role << ": " << l.cls << "\n";
  for (const auto& i : ast.interactions) {
    os << "msg " << i.sender << " -> " << i.receiver << ": " << i.selector << params(i.args) << "\n";
  }
  return os.str();
}

std::string print(const SnapshotAst& ast) {
  std::ostringstream os;
  if (!ast.name.empty()) os << "snapshot " << ast.name << "\n";
  for (const auto& o : ast.objects) {
    os << "obj " << (o.anonymous ? "" : o.name + " ") << ": " << o.cls << " {";
    for (std::size_t i = 0; i < o.bindings.size(); ++i) {
      const auto& b = o.bindings[i];
      os << (i ? ", " : " ") << b.attribute << " = " << (b.object_ref ? *b.object_ref : b.value.to_string());
    }
    os << (o.bindings.empty() ? "}" : " }") << "\n";
  }
  for (const auto& l : ast.links) {
    os << "link " << l.association << " " << l.from << (l.bidirectional ? " -- " : " -> ") << l.to << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Structural equality

namespace {

bool same_attrs(const std::vector<AttributeDecl>& a, const std::vector<AttributeDecl>& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                    [](const AttributeDecl& x, const AttributeDecl& y) { return x.name == y.name && x.type == y.type; });
}

bool same_class(const ClassDecl& a, const ClassDecl& b) {
  return a.name == b.name && a.package == b.package && a.is_abstract == b.is_abstract &&
         same_attrs(a.attributes, b.attributes) &&
         std::equal(a.operations.begin(), a.operations.end(), b.operations.begin(), b.operations.end(),
                    [](const OperationDecl& x, const OperationDecl& y) { return x.name == y.name && x.sig == y.sig; });
}

template <typename T, typename Key, typename Eq>
bool same_set(std::vector<T> a, std::vector<T> b, Key key, Eq eq) {
  auto by_key = [&](const T& x, const T& y) { return key(x) < key(y); };
  std::sort(a.begin(), a.end(), by_key);
  std::sort(b.begin(), b.end(), by_key);
  return std::equal(a.begin(), a.end(), b.begin(), b.end(), eq);
}

bool same_state(const DiagramState& a, const DiagramState& b) {
  return a.name == b.name && a.anonymous == b.anonymous && a.is_region == b.is_region && a.kind == b.kind &&
         a.initial == b.initial &&
         std::equal(a.children.begin(), a.children.end(), b.children.begin(), b.children.end(), same_state);
}

bool same_event(const std::optional<EventSig>& a, const std::optional<EventSig>& b) {
  if (a.has_value() != b.has_value()) return false;
  if (!a) return true;
  return a->selector == b->selector && a->args == b->args && a->any_args == b->any_args;
}

}  // namespace

bool structurally_equal(const ClassModelAst& a, const ClassModelAst& b) {
  bool packages = same_set(
      a.packages, b.packages, [](const PackageDecl& p) { return p.name; },
      [](const PackageDecl& x, const PackageDecl& y) { return x.name == y.name; });
  bool classes = same_set(
      a.classes, b.classes, [](const ClassDecl& c) { return c.name; }, same_class);
  bool assocs = std::equal(a.associations.begin(), a.associations.end(), b.associations.begin(), b.associations.end(),
                           [](const AssociationDecl& x, const AssociationDecl& y) {
                             return x.name == y.name && x.kind == y.kind && x.a.cls == y.a.cls &&
                                    x.a.mult == y.a.mult && x.b.cls == y.b.cls && x.b.mult == y.b.mult &&
                                    same_attrs(x.attributes, y.attributes);
                           });
  bool gens = std::equal(a.generalizations.begin(), a.generalizations.end(), b.generalizations.begin(),
                         b.generalizations.end(), [](const GeneralizationDecl& x, const GeneralizationDecl& y) {
                           return x.sub == y.sub && x.super == y.super;
                         });
  bool constraints = std::equal(a.constraints.begin(), a.constraints.end(), b.constraints.begin(), b.constraints.end(),
                                [](const ConstraintDecl& x, const ConstraintDecl& y) {
                                  return x.name == y.name && x.cls == y.cls && x.predicate == y.predicate;
                                });
  return packages && classes && assocs && gens && constraints;
}

bool structurally_equal(const StateDiagramAst& a, const StateDiagramAst& b) {
  return a.owner == b.owner && a.unhandled == b.unhandled && same_state(a.root, b.root) &&
         std::equal(a.transitions.begin(), a.transitions.end(), b.transitions.begin(), b.transitions.end(),
                    [](const TransitionDecl& x, const TransitionDecl& y) {
                      auto same_send = [](const SendDecl& s, const SendDecl& t) {
                        return s.target == t.target && s.selector == t.selector && s.args == t.args && s.call == t.call;
                      };
                      return x.source == y.source && x.destination == y.destination && same_event(x.event, y.event) &&
                             x.guard == y.guard &&
                             std::equal(x.sends.begin(), x.sends.end(), y.sends.begin(), y.sends.end(), same_send);
                    });
}

bool structurally_equal(const SequenceDiagramAst& a, const SequenceDiagramAst& b) {
  return a.name == b.name &&
         std::equal(a.lifelines.begin(), a.lifelines.end(), b.lifelines.begin(), b.lifelines.end(),
                    [](const Lifeline& x, const Lifeline& y) { return x.role == y.role && x.cls == y.cls; }) &&
         std::equal(a.interactions.begin(), a.interactions.end(), b.interactions.begin(), b.interactions.end(),
                    [](const Interaction& x, const Interaction& y) {
                      return x.sender == y.sender && x.receiver == y.receiver && x.selector == y.selector &&
                             x.args == y.args;
                    });
}

bool structurally_equal(const SnapshotAst& a, const SnapshotAst& b) {
  return a.name == b.name &&
         std::equal(a.objects.begin(), a.objects.end(), b.objects.begin(), b.objects.end(),
                    [](const ObjectDecl& x, const ObjectDecl& y) {
                      return x.name == y.name && x.anonymous == y.anonymous && x.cls == y.cls &&
                             std::equal(x.bindings.begin(), x.bindings.end(), y.bindings.begin(), y.bindings.end(),
                                        [](const AttributeBinding& p, const AttributeBinding& q) {
                                          return p.attribute == q.attribute && p.value == q.value &&
                                                 p.object_ref == q.object_ref;
                                        });
                    }) &&
         std::equal(a.links.begin(), a.links.end(), b.links.begin(), b.links.end(), [](const LinkDecl& x, const LinkDecl& y) {
           return x.association == y.association && x.from == y.from && x.to == y.to &&
                  x.bidirectional == y.bidirectional;
         });
}

}  // namespace umlsem::dsl
