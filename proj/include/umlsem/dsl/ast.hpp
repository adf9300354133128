#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "umlsem/core/signature.hpp"
#include "umlsem/core/sts.hpp"
#include "umlsem/core/value.hpp"
#include "umlsem/source.hpp"

namespace umlsem::dsl {

// ---------------------------------------------------------------------------
// Expressions (guards and constraints)

struct Expr {
  enum class Kind { Literal, Name, Cardinality, Not, Neg, Binary };

  Kind kind = Kind::Literal;
  Value literal;
  std::string name;  // Name / Cardinality (association or link-field name)
  std::string op;    // Binary: || && == != < <= > >= + -
  std::vector<Expr> operands;
  SourcePos pos;

  static Expr lit(Value v, SourcePos p = {});
  static Expr ref(std::string n, SourcePos p = {});
  static Expr binary(std::string op, Expr lhs, Expr rhs, SourcePos p = {});
  static Expr negate(Expr e, SourcePos p = {});

  bool operator==(const Expr& o) const;
};

// ---------------------------------------------------------------------------
// Class model

struct Multiplicity {
  std::uint64_t lower = 0;
  std::optional<std::uint64_t> upper;  // nullopt = *

  bool admits(std::uint64_t n) const { return n >= lower && (!upper || n <= *upper); }
  std::string to_string() const;
  auto operator<=>(const Multiplicity&) const = default;
};

struct AttributeDecl {
  std::string name;
  TypeRef type;
  SourcePos pos;
};

struct OperationDecl {
  std::string name;
  MethodSig sig;
  SourcePos pos;
};

struct ClassDecl {
  ClassName name;         // qualified: pkg.sub.Name
  std::string package;    // qualified package, "" at top level
  bool is_abstract = false;
  std::vector<AttributeDecl> attributes;
  std::vector<OperationDecl> operations;
  SourcePos pos;
};

enum class AssociationKind { Plain, SharedAggregate, Composition };

const char* to_string(AssociationKind kind);

struct AssociationEnd {
  ClassName cls;
  Multiplicity mult;
  SourcePos pos;
};

struct AssociationDecl {
  std::string name;
  AssociationEnd a;  // aggregate side for aggregation/composition
  AssociationEnd b;
  AssociationKind kind = AssociationKind::Plain;
  std::vector<AttributeDecl> attributes;
  SourcePos pos;
};

struct GeneralizationDecl {
  ClassName sub;
  ClassName super;
  SourcePos pos;
};

struct ConstraintDecl {
  std::string name;
  ClassName cls;
  Expr predicate;
  SourcePos pos;
};

struct PackageDecl {
  std::string name;  // qualified
  SourcePos pos;
};

struct ClassModelAst {
  std::string document;
  std::vector<PackageDecl> packages;
  std::vector<ClassDecl> classes;
  std::vector<AssociationDecl> associations;
  std::vector<GeneralizationDecl> generalizations;
  std::vector<ConstraintDecl> constraints;

  const ClassDecl* find_class(const ClassName& name) const;
  const AssociationDecl* find_association(const std::string& name) const;
};

// ---------------------------------------------------------------------------
// State diagrams

struct DiagramState {
  enum class Kind { Simple, Or, And };

  std::string name;
  bool anonymous = false;
  bool is_region = false;  // an Or-state that is a region of an And-state
  Kind kind = Kind::Simple;
  /// Or: substates; And: regions (each an Or-state with is_region set).
  std::vector<DiagramState> children;
  std::optional<std::string> initial;  // Or only
  SourcePos pos;
};

struct EventSig {
  std::string selector;
  std::vector<ArgPattern> args;
  bool any_args = true;  // written without parentheses
  SourcePos pos;
};

struct SendDecl {
  SendTarget target;
  std::string selector;  // "create" for creation sends
  std::vector<ValueExpr> args;
  /// Synchronous call: the receiver answers with "<selector>_return".
  bool call = false;
  SourcePos pos;
};

struct TransitionDecl {
  std::string source;
  std::string destination;
  std::optional<EventSig> event;  // nullopt: spontaneous
  std::optional<Expr> guard;
  std::vector<SendDecl> sends;
  SourcePos pos;
};

struct StateDiagramAst {
  std::string document;
  ClassName owner;  // may be empty when the header is omitted
  std::optional<UnhandledPolicy> unhandled;
  /// The implicit top-level Or-state; its children are the top-level states.
  DiagramState root;
  std::vector<TransitionDecl> transitions;

  std::string initial_state() const { return root.initial.value_or(""); }
  /// Nesting depth of states below the root (0 when there are no states).
  /// Regions of an And-state do not count as a level of their own.
  std::size_t depth() const;
  /// Preorder list of all states below the root.
  std::vector<const DiagramState*> all_states() const;
  const DiagramState* find_state(const std::string& name) const;
};

// ---------------------------------------------------------------------------
// Sequence diagrams

struct Lifeline {
  std::string role;
  ClassName cls;
  SourcePos pos;
};

struct Interaction {
  std::string sender;
  std::string receiver;
  std::string selector;
  /// Literal arguments; wildcards match anything.
  std::vector<ArgPattern> args;
  SourcePos pos;
};

struct SequenceDiagramAst {
  std::string document;
  std::string name;
  std::vector<Lifeline> lifelines;
  std::vector<Interaction> interactions;

  const Lifeline* find_lifeline(const std::string& role) const;
};

// ---------------------------------------------------------------------------
// Snapshots (object diagrams)

struct AttributeBinding {
  std::string attribute;
  /// Literal, or a reference to another snapshot object by name.
  Value value;
  std::optional<std::string> object_ref;
  SourcePos pos;
};

struct ObjectDecl {
  std::string name;
  bool anonymous = false;
  ClassName cls;
  std::vector<AttributeBinding> bindings;
  SourcePos pos;
};

struct LinkDecl {
  std::string association;
  std::string from;
  std::string to;
  /// false: "a -> b", only a knows b.
  bool bidirectional = true;
  SourcePos pos;
};

struct SnapshotAst {
  std::string document;
  std::string name;
  std::vector<ObjectDecl> objects;
  std::vector<LinkDecl> links;

  const ObjectDecl* find_object(const std::string& name) const;
};

}  // namespace umlsem::dsl
