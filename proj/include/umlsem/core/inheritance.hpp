#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "umlsem/core/ids.hpp"
#include "umlsem/core/signature.hpp"

namespace umlsem {

/// The subclass relation: direct (sub, super) pairs and their
/// reflexive-transitive closure over a fixed universe of classes.
class InheritanceRelation {
 public:
  using Pair = std::pair<ClassName, ClassName>;

  InheritanceRelation() = default;
  InheritanceRelation(std::set<ClassName> classes, std::vector<Pair> direct);

  static InheritanceRelation from_table(const ClassTable& table);

  /// Throws Error(UnknownClass) when either class is outside the universe.
  bool is_subclass(const ClassName& c, const ClassName& d) const;

  const std::set<ClassName>& classes() const { return classes_; }
  const std::vector<Pair>& direct() const { return direct_; }
  const std::set<Pair>& closure() const { return closure_; }

  /// A relation whose direct pairs are this relation's closure.
  InheritanceRelation closed() const;

  bool is_acyclic() const;
  /// Strongly connected groups of size > 1 (or self-loops), each sorted.
  std::vector<std::vector<ClassName>> cycles() const;

  /// All d with c ⊑ d, including c.
  std::vector<ClassName> ancestors(const ClassName& c) const;
  /// All d with d ⊑ c, including c.
  std::vector<ClassName> descendants(const ClassName& c) const;

  bool operator==(const InheritanceRelation& other) const { return classes_ == other.classes_ && closure_ == other.closure_; }

 private:
  void require(const ClassName& c) const;

  std::set<ClassName> classes_;
  std::vector<Pair> direct_;
  std::set<Pair> closure_;
};

/// ID_c (polymorphic = false) or {id | class(id) ⊑ c} (polymorphic = true).
IdSetSpec ids_of(const ClassTable& table, const InheritanceRelation& rel, const ClassName& c, bool polymorphic);

}  // namespace umlsem
