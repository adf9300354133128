#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "umlsem/core/inheritance.hpp"
#include "umlsem/core/signature.hpp"
#include "umlsem/core/state.hpp"
#include "umlsem/dsl/ast.hpp"

namespace umlsem::elab {

/// A binary association. Objects at side s hold a link set pointing at
/// objects of cls[1-s]; its size is constrained by mult[1-s].
struct AssociationInfo {
  std::string name;
  dsl::AssociationKind kind = dsl::AssociationKind::Plain;
  std::array<ClassName, 2> cls;
  std::array<dsl::Multiplicity, 2> mult;
  std::array<SourcePos, 2> end_pos;
  SourcePos pos;
};

/// One link-set field of an object state, e.g. "coordinates.CentralOffice".
struct LinkField {
  LinkEnd end;
  ClassName far_class;
  dsl::Multiplicity mult;
  std::string display;
};

struct ConstraintInfo {
  std::string name;
  ClassName cls;
  dsl::Expr predicate;
  SourcePos pos;
};

/// Problems elaboration can record instead of throwing.
struct StaticIssue {
  enum class Kind { SignatureConflict, CyclicInheritance, CompositionMultiplicity };

  Kind kind;
  std::string subject;
  std::string message;
  SourcePos pos;
};

struct StaticModel {
  ClassTable classes;
  InheritanceRelation inheritance;
  std::map<ClassName, Signature> signatures;  // effective
  std::vector<AssociationInfo> associations;
  std::vector<ConstraintInfo> constraints;
  std::vector<StaticIssue> issues;

  bool has_class(const ClassName& c) const { return classes.count(c) > 0; }
  bool is_abstract(const ClassName& c) const;
  bool is_subclass(const ClassName& c, const ClassName& d) const { return inheritance.is_subclass(c, d); }
  /// Throws Error(UnknownClass).
  const Signature& signature(const ClassName& c) const;
  const AssociationInfo* association(const std::string& name) const;

  /// Link-set fields of an object of class c, including those inherited
  /// from associations of its superclasses.
  std::vector<LinkField> link_fields(const ClassName& c) const;
  /// Fields selected by a send-target or cardinality name: "assoc" selects
  /// every field of that association, "assoc.FarClass" exactly one.
  std::vector<LinkField> fields_named(const ClassName& c, const std::string& name) const;
  /// Side an object of class `c` takes in association `a` when linked to an
  /// object of class `other`; nullopt if the classes do not fit.
  std::optional<int> side_of(const AssociationInfo& a, const ClassName& c, const ClassName& other) const;
};

/// Throws Error(SignatureConflict | CyclicInheritance | CompositionMultiplicity)
/// for the first problem found.
StaticModel elaborate_static(const dsl::ClassModelAst& ast);

/// Same elaboration, but problems are collected in StaticModel::issues.
StaticModel elaborate_static_lenient(const dsl::ClassModelAst& ast);

}  // namespace umlsem::elab
