#include <algorithm>
#include <map>
#include <set>

#include "parser_common.hpp"
#include "umlsem/dsl/parser.hpp"

namespace umlsem::dsl {

namespace {

using detail::Cursor;

std::string join_name(const std::string& package, const std::string& name) {
  return package.empty() ? name : package + "." + name;
}

class ClassModelParser {
 public:
  ClassModelParser(std::string_view text, std::string_view document) : c_(text, document) {
    ast_.document = std::string(document);
  }

  ClassModelAst parse() {
    c_.skip_separators();
    statements("");
    if (!c_.at_end()) c_.fail({"'class'", "'assoc'", "'gen'", "'package'", "'constraint'"});
    resolve();
    return std::move(ast_);
  }

 private:
  // Raw references awaiting resolution, with the package they appear in.
  struct Ref {
    std::string* target;
    std::string package;
    SourcePos pos;
  };

  void statements(const std::string& package) {
    while (!c_.at_end() && !c_.peek().is_punct("}")) {
      statement(package);
      c_.skip_separators();
    }
  }

  void statement(const std::string& package) {
    const Token& t = c_.peek();
    if (t.is_word("package")) return package_decl(package);
    if (t.is_word("class") || t.is_word("abstract")) return class_decl(package);
    if (t.is_word("assoc")) return association(package);
    if (t.is_word("gen")) return generalization(package);
    if (t.is_word("constraint")) return constraint(package);
    c_.fail({"'class'", "'abstract'", "'assoc'", "'gen'", "'package'", "'constraint'"});
  }

  void package_decl(const std::string& outer) {
    SourcePos pos = c_.next().pos;
    std::string name = join_name(outer, c_.expect_ident("package name").text);
    if (std::any_of(ast_.packages.begin(), ast_.packages.end(), [&](const PackageDecl& p) { return p.name == name; }))
      throw ResolveError(name, pos, "duplicate package");
    ast_.packages.push_back(PackageDecl{name, pos});
    c_.expect_punct("{");
    c_.skip_separators();
    statements(name);
    c_.expect_punct("}");
    c_.end_statement();
  }

  void class_decl(const std::string& package) {
    SourcePos pos = c_.peek().pos;
    ClassDecl cls;
    cls.is_abstract = c_.accept_word("abstract");
    c_.expect_word("class");
    const Token& name = c_.expect_ident("class name");
    cls.name = join_name(package, name.text);
    cls.package = package;
    cls.pos = pos;
    if (ast_.find_class(cls.name)) throw ResolveError(cls.name, name.pos, "duplicate class");
    std::vector<std::pair<std::string, SourcePos>> supers;
    if (c_.accept_word("extends")) {
      do {
        SourcePos sp = c_.peek().pos;
        supers.emplace_back(c_.qualified_name(), sp);
      } while (c_.accept_punct(","));
    }
    if (c_.accept_punct("{")) {
      c_.skip_separators();
      std::set<std::string> members;
      while (!c_.peek().is_punct("}")) {
        member(cls, members);
        c_.end_statement();
      }
      c_.expect_punct("}");
    }
    c_.end_statement();
    ast_.classes.push_back(std::move(cls));
    for (auto& [raw, sp] : supers) pending_extends_.push_back({ast_.classes.back().name, raw, package, sp});
  }

  void member(ClassDecl& cls, std::set<std::string>& seen) {
    SourcePos pos = c_.peek().pos;
    if (c_.accept_word("attr")) {
      const Token& n = c_.expect_ident("attribute name");
      if (!seen.insert(n.text).second) throw ResolveError(n.text, n.pos, "duplicate member");
      c_.expect_punct(":");
      cls.attributes.push_back(AttributeDecl{n.text, c_.type_ref(), pos});
      return;
    }
    if (c_.accept_word("op")) {
      const Token& n = c_.expect_ident("operation name");
      if (!seen.insert(n.text).second) throw ResolveError(n.text, n.pos, "duplicate member");
      OperationDecl op{n.text, {}, pos};
      c_.expect_punct("(");
      if (!c_.accept_punct(")")) {
        do op.sig.params.push_back(c_.type_ref());
        while (c_.accept_punct(","));
        c_.expect_punct(")");
      }
      if (c_.accept_punct(":")) op.sig.result = c_.type_ref();
      cls.operations.push_back(std::move(op));
      return;
    }
    c_.fail({"'attr'", "'op'", "'}'"});
  }

  Multiplicity multiplicity() {
    Multiplicity m;
    if (c_.accept_punct("*")) return m;
    m.lower = static_cast<std::uint64_t>(c_.expect_int("multiplicity"));
    if (c_.accept_punct("..")) {
      if (!c_.accept_punct("*")) {
        auto up = static_cast<std::uint64_t>(c_.expect_int("upper bound or '*'"));
        if (up < m.lower) throw SyntaxError(c_.peek().pos, {"upper bound >= lower bound"}, "empty multiplicity");
        m.upper = up;
      }
    } else {
      m.upper = m.lower;
    }
    return m;
  }

  AssociationEnd association_end() {
    AssociationEnd end;
    end.pos = c_.peek().pos;
    end.cls = c_.qualified_name();
    c_.expect_punct("[");
    end.mult = multiplicity();
    c_.expect_punct("]");
    return end;
  }

  void association(const std::string& package) {
    AssociationDecl a;
    a.pos = c_.next().pos;
    const Token& n = c_.expect_ident("association name");
    a.name = n.text;
    if (ast_.find_association(a.name)) throw ResolveError(a.name, n.pos, "duplicate association");
    if (c_.peek(1).kind == Token::Kind::Ident) {
      if (c_.accept_word("composition")) a.kind = AssociationKind::Composition;
      else if (c_.accept_word("aggregation")) a.kind = AssociationKind::SharedAggregate;
    }
    a.a = association_end();
    c_.expect_punct("--");
    a.b = association_end();
    if (c_.accept_punct("{")) {
      c_.skip_separators();
      while (!c_.peek().is_punct("}")) {
        SourcePos pos = c_.peek().pos;
        c_.expect_word("attr");
        std::string name = c_.expect_ident("attribute name").text;
        c_.expect_punct(":");
        a.attributes.push_back(AttributeDecl{name, c_.type_ref(), pos});
        c_.end_statement();
      }
      c_.expect_punct("}");
    }
    c_.end_statement();
    ast_.associations.push_back(std::move(a));
    assoc_packages_.push_back(package);
  }

  void generalization(const std::string& package) {
    GeneralizationDecl g;
    g.pos = c_.next().pos;
    g.sub = c_.qualified_name();
    c_.expect_punct("<");
    g.super = c_.qualified_name();
    c_.end_statement();
    ast_.generalizations.push_back(std::move(g));
    gen_packages_.push_back(package);
  }

  void constraint(const std::string& package) {
    ConstraintDecl k;
    k.pos = c_.next().pos;
    k.name = c_.expect_ident("constraint name").text;
    c_.expect_word("on");
    k.cls = c_.qualified_name();
    c_.expect_punct(":");
    k.predicate = c_.expression();
    c_.end_statement();
    ast_.constraints.push_back(std::move(k));
    constraint_packages_.push_back(package);
  }

  void resolve_ref(std::string& name, const std::string& package, const SourcePos& pos) {
    auto r = resolve_class_name(ast_, name, package);
    if (!r) throw ResolveError(name, pos, "undeclared class");
    name = *r;
  }

  void resolve_type(TypeRef& t, const std::string& package, const SourcePos& pos) {
    if (t.base == TypeRef::Base::Class) resolve_ref(t.class_name, package, pos);
  }

  void resolve() {
    for (auto& cls : ast_.classes) {
      for (auto& a : cls.attributes) resolve_type(a.type, cls.package, a.pos);
      for (auto& op : cls.operations) {
        for (auto& p : op.sig.params) resolve_type(p, cls.package, op.pos);
        if (op.sig.result) resolve_type(*op.sig.result, cls.package, op.pos);
      }
    }
    for (std::size_t i = 0; i < ast_.associations.size(); ++i) {
      auto& a = ast_.associations[i];
      resolve_ref(a.a.cls, assoc_packages_[i], a.a.pos);
      resolve_ref(a.b.cls, assoc_packages_[i], a.b.pos);
      for (auto& attr : a.attributes) resolve_type(attr.type, assoc_packages_[i], attr.pos);
    }
    // "extends" clauses become generalizations, placed before explicit gen statements.
    std::vector<GeneralizationDecl> gens;
    for (auto& e : pending_extends_) {
      resolve_ref(e.super, e.package, e.pos);
      gens.push_back(GeneralizationDecl{e.sub, e.super, e.pos});
    }
    for (std::size_t i = 0; i < ast_.generalizations.size(); ++i) {
      auto& g = ast_.generalizations[i];
      resolve_ref(g.sub, gen_packages_[i], g.pos);
      resolve_ref(g.super, gen_packages_[i], g.pos);
      gens.push_back(g);
    }
    ast_.generalizations = std::move(gens);
    for (std::size_t i = 0; i < ast_.constraints.size(); ++i) {
      resolve_ref(ast_.constraints[i].cls, constraint_packages_[i], ast_.constraints[i].pos);
    }
  }

  struct PendingExtends {
    ClassName sub;
    std::string super;
    std::string package;
    SourcePos pos;
  };

  Cursor c_;
  ClassModelAst ast_;
  std::vector<std::string> assoc_packages_;
  std::vector<std::string> gen_packages_;
  std::vector<std::string> constraint_packages_;
  std::vector<PendingExtends> pending_extends_;
};

}  // namespace

std::optional<ClassName> resolve_class_name(const ClassModelAst& model, const std::string& name,
                                            const std::string& package) {
  std::string scope = package;
  while (true) {
    std::string candidate = join_name(scope, name);
    if (model.find_class(candidate)) return candidate;
    if (scope.empty()) break;
    auto dot = scope.rfind('.');
    scope = dot == std::string::npos ? std::string() : scope.substr(0, dot);
  }
  return std::nullopt;
}

bool conforms_to(const ClassModelAst& model, const ClassName& sub, const ClassName& super) {
  std::vector<ClassName> stack{sub};
  std::set<ClassName> seen{sub};
  while (!stack.empty()) {
    ClassName cur = stack.back();
    stack.pop_back();
    if (cur == super) return true;
    for (const auto& g : model.generalizations) {
      if (g.sub == cur && seen.insert(g.super).second) stack.push_back(g.super);
    }
  }
  return false;
}

ClassModelAst parse_class_model(std::string_view text, std::string_view document) {
  return ClassModelParser(text, document).parse();
}

}  // namespace umlsem::dsl
