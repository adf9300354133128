#include <set>

#include "parser_common.hpp"
#include "umlsem/dsl/parser.hpp"

namespace umlsem::dsl {

namespace {

// Attribute type of `cls` including inherited attributes, if declared.
std::optional<TypeRef> attribute_type(const ClassModelAst& model, const ClassName& cls, const std::string& attr) {
  for (const auto& decl : model.classes) {
    if (!conforms_to(model, cls, decl.name)) continue;
    for (const auto& a : decl.attributes) {
      if (a.name == attr) return a.type;
    }
  }
  return std::nullopt;
}

}  // namespace

SnapshotAst parse_snapshot(std::string_view text, std::string_view document, const ClassModelAst* model) {
  detail::Cursor c(text, document);
  SnapshotAst ast;
  ast.document = std::string(document);
  int anonymous = 0;
  std::vector<std::pair<SourcePos, SourcePos>> link_pos;
  c.skip_separators();
  if (c.accept_word("snapshot")) {
    ast.name = c.expect_ident("snapshot name").text;
    c.end_statement();
  }
  while (!c.at_end()) {
    const Token& t = c.peek();
    if (t.is_word("obj")) {
      ObjectDecl o;
      o.pos = c.next().pos;
      if (c.peek().is_punct(":")) {
        o.anonymous = true;
        o.name = "$o" + std::to_string(++anonymous);
      } else {
        const Token& n = c.expect_ident("object name");
        o.name = n.text;
        if (ast.find_object(o.name)) throw ResolveError(o.name, n.pos, "duplicate object");
      }
      c.expect_punct(":");
      o.cls = c.qualified_name();
      if (c.accept_punct("{")) {
        c.skip_separators();
        while (!c.peek().is_punct("}")) {
          AttributeBinding b;
          b.pos = c.peek().pos;
          b.attribute = c.expect_ident("attribute name").text;
          c.expect_punct("=");
          if (c.at_literal()) {
            b.value = c.literal();
          } else {
            b.object_ref = c.expect_ident("value").text;
          }
          o.bindings.push_back(std::move(b));
          if (!c.accept_punct(",")) c.end_statement();
          c.skip_separators();
        }
        c.expect_punct("}");
      }
      ast.objects.push_back(std::move(o));
    } else if (t.is_word("link")) {
      LinkDecl l;
      l.pos = c.next().pos;
      l.association = c.expect_ident("association name").text;
      SourcePos from_pos = c.peek().pos;
      l.from = c.expect_ident("object name").text;
      if (c.accept_punct("->")) {
        l.bidirectional = false;
      } else {
        c.expect_punct("--");
      }
      SourcePos to_pos = c.peek().pos;
      l.to = c.expect_ident("object name").text;
      ast.links.push_back(std::move(l));
      link_pos.emplace_back(from_pos, to_pos);
    } else {
      c.fail({"'obj'", "'link'"});
    }
    c.end_statement();
  }
  for (std::size_t k = 0; k < ast.links.size(); ++k) {
    const auto& l = ast.links[k];
    if (!ast.find_object(l.from)) throw ResolveError(l.from, link_pos[k].first, "undeclared object");
    if (!ast.find_object(l.to)) throw ResolveError(l.to, link_pos[k].second, "undeclared object");
  }
  for (const auto& o : ast.objects) {
    for (const auto& b : o.bindings) {
      if (b.object_ref && !ast.find_object(*b.object_ref)) throw ResolveError(*b.object_ref, b.pos, "undeclared object");
    }
  }
  if (model) {
    for (auto& o : ast.objects) {
      auto r = resolve_class_name(*model, o.cls);
      if (!r) throw ResolveError(o.cls, o.pos, "undeclared class");
      o.cls = *r;
    }
    resolve_snapshot(ast, *model);
  }
  return ast;
}

void resolve_snapshot(const SnapshotAst& snapshot, const ClassModelAst& model) {
  for (const auto& o : snapshot.objects) {
    if (!model.find_class(o.cls)) throw ResolveError(o.cls, o.pos, "undeclared class");
    std::set<std::string> bound;
    for (const auto& b : o.bindings) {
      if (!bound.insert(b.attribute).second) throw ResolveError(b.attribute, b.pos, "attribute bound twice");
      auto type = attribute_type(model, o.cls, b.attribute);
      if (!type) throw ResolveError(b.attribute, b.pos, "no such attribute in class " + o.cls + ":");
      if (b.object_ref) {
        const ObjectDecl* target = snapshot.find_object(*b.object_ref);
        if (type->base != TypeRef::Base::Class || !target || !conforms_to(model, target->cls, type->class_name))
          throw ResolveError(*b.object_ref, b.pos, "ill-typed reference for attribute " + b.attribute + ":");
      } else if (!type->admits(b.value)) {
        throw ResolveError(b.value.to_string(), b.pos, "value does not fit type " + type->to_string() + " of");
      }
    }
  }
  for (const auto& l : snapshot.links) {
    const AssociationDecl* a = model.find_association(l.association);
    if (!a) throw ResolveError(l.association, l.pos, "undeclared association");
    const ObjectDecl* from = snapshot.find_object(l.from);
    const ObjectDecl* to = snapshot.find_object(l.to);
    if (!from || !to) throw ResolveError(from ? l.to : l.from, l.pos, "undeclared object");
    bool forward = conforms_to(model, from->cls, a->a.cls) && conforms_to(model, to->cls, a->b.cls);
    bool backward = conforms_to(model, from->cls, a->b.cls) && conforms_to(model, to->cls, a->a.cls);
    if (!forward && !backward)
      throw ResolveError(l.association, l.pos,
                         "association does not join classes " + from->cls + " and " + to->cls + ":");
  }
}

}  // namespace umlsem::dsl
