#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "umlsem/core/value.hpp"
#include "umlsem/source.hpp"

namespace umlsem {

struct MethodSig {
  std::vector<TypeRef> params;
  std::optional<TypeRef> result;

  std::string to_string(const std::string& selector) const;
  auto operator<=>(const MethodSig&) const = default;
};

/// Attributes and methods of a class. Attribute and selector names share
/// one namespace.
struct Signature {
  std::map<std::string, TypeRef> attributes;
  std::map<std::string, MethodSig> methods;

  bool has_member(const std::string& name) const;
  /// Map inclusion: every member of *this appears in `other` with the same type.
  bool subset_of(const Signature& other) const;

  auto operator<=>(const Signature&) const = default;
};

/// Per-class declaration data: the part of a class model the system-model
/// vocabulary needs (name, abstractness, declared members, direct supers).
struct ClassEntry {
  ClassName name;
  bool is_abstract = false;
  Signature declared;
  std::vector<ClassName> supers;
  SourcePos pos;
};

using ClassTable = std::map<ClassName, ClassEntry>;

class InheritanceRelation;

/// A member declared twice along a class's ancestry with different types.
struct SignatureClash {
  ClassName cls;        // class whose effective signature clashes
  std::string member;
  ClassName declared_in;
  ClassName conflicts_with;
};

/// Union of the declared members of `c` and all of its superclasses.
/// Throws Error(SignatureConflict) on the first clash.
Signature effective_signature(const ClassTable& table, const InheritanceRelation& rel, const ClassName& c);

/// Lenient form: the member closest to `c` wins, clashes are appended.
Signature effective_signature(const ClassTable& table, const InheritanceRelation& rel, const ClassName& c,
                              std::vector<SignatureClash>& clashes);

}  // namespace umlsem
