#include "umlsem/dsl/ast.hpp"

#include <functional>

namespace umlsem::dsl {

Expr Expr::lit(Value v, SourcePos p) {
  Expr e;
  e.kind = Kind::Literal;
  e.literal = std::move(v);
  e.pos = std::move(p);
  return e;
}

Expr Expr::ref(std::string n, SourcePos p) {
  Expr e;
  e.kind = Kind::Name;
  e.name = std::move(n);
  e.pos = std::move(p);
  return e;
}

Expr Expr::binary(std::string op, Expr lhs, Expr rhs, SourcePos p) {
  Expr e;
  e.kind = Kind::Binary;
  e.op = std::move(op);
  e.operands.push_back(std::move(lhs));
  e.operands.push_back(std::move(rhs));
  e.pos = std::move(p);
  return e;
}

Expr Expr::negate(Expr inner, SourcePos p) {
  Expr e;
  e.kind = Kind::Neg;
  e.operands.push_back(std::move(inner));
  e.pos = std::move(p);
  return e;
}

bool Expr::operator==(const Expr& o) const {
  return kind == o.kind && literal == o.literal && name == o.name && op == o.op && operands == o.operands;
}

std::string Multiplicity::to_string() const {
  if (upper && *upper == lower) return std::to_string(lower);
  return std::to_string(lower) + ".." + (upper ? std::to_string(*upper) : std::string("*"));
}

const char* to_string(AssociationKind kind) {
  switch (kind) {
    case AssociationKind::Plain: return "plain";
    case AssociationKind::SharedAggregate: return "aggregation";
    case AssociationKind::Composition: return "composition";
  }
  return "plain";
}

const ClassDecl* ClassModelAst::find_class(const ClassName& name) const {
  for (const auto& c : classes) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

const AssociationDecl* ClassModelAst::find_association(const std::string& name) const {
  for (const auto& a : associations) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

std::size_t StateDiagramAst::depth() const {
  std::function<std::size_t(const DiagramState&)> rec = [&](const DiagramState& s) -> std::size_t {
    std::size_t d = 0;
    for (const auto& c : s.children) d = std::max(d, (c.is_region ? 0 : 1) + rec(c));
    return d;
  };
  return rec(root);
}

std::vector<const DiagramState*> StateDiagramAst::all_states() const {
  std::vector<const DiagramState*> out;
  std::function<void(const DiagramState&)> rec = [&](const DiagramState& s) {
    for (const auto& c : s.children) {
      out.push_back(&c);
      rec(c);
    }
  };
  rec(root);
  return out;
}

const DiagramState* StateDiagramAst::find_state(const std::string& name) const {
  for (const auto* s : all_states()) {
    if (s->name == name) return s;
  }
  return nullptr;
}

const Lifeline* SequenceDiagramAst::find_lifeline(const std::string& role) const {
  for (const auto& l : lifelines) {
    if (l.role == role) return &l;
  }
  return nullptr;
}

const ObjectDecl* SnapshotAst::find_object(const std::string& n) const {
  for (const auto& o : objects) {
    if (o.name == n) return &o;
  }
  return nullptr;
}

}  // namespace umlsem::dsl
