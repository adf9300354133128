#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace umlsem {

using ClassName = std::string;

/// Identifies the creator of an object and which of its creations it was.
/// Injective by construction: (creator class, creator index, ordinal).
struct Provenance {
  ClassName creator_class;
  std::uint64_t creator_index = 0;
  std::uint64_t ordinal = 0;

  auto operator<=>(const Provenance&) const = default;
};

/// An object identifier: the owning class plus its allocation ordinal within
/// that class. Objects allocated through creation carry the provenance tag
/// that places them inside their creator's creatables set; initially active
/// objects carry none and are therefore creatable by nobody.
struct ObjectId {
  ClassName cls;
  std::uint64_t index = 0;
  std::optional<Provenance> tag;

  std::string to_string() const;  // "Class#index"

  auto operator<=>(const ObjectId&) const = default;
};

/// Symbolic description of a set of identifiers. The sets in question are
/// either empty or countably infinite, so they are kept as predicates.
class IdSetSpec {
 public:
  static IdSetSpec empty();
  /// All identifiers whose class is one of `classes`.
  static IdSetSpec of_classes(std::vector<ClassName> classes);
  /// Identifiers of any class allocated by `creator`.
  static IdSetSpec creatables_of(const ObjectId& creator);

  bool is_empty() const;
  /// Cardinality is either 0 or countably infinite.
  bool is_infinite() const { return !is_empty(); }
  bool contains(const ObjectId& id) const;
  /// Exact disjointness test for the two shapes of set this type can denote.
  bool disjoint_with(const IdSetSpec& other) const;

  const std::optional<std::vector<ClassName>>& classes() const { return classes_; }
  const std::optional<ObjectId>& creator() const { return creator_; }

  std::string to_string() const;

 private:
  // nullopt = any class
  std::optional<std::vector<ClassName>> classes_;
  std::optional<ObjectId> creator_;
};

/// creatables(id): every identifier whose provenance names `id` as creator.
IdSetSpec creatables(const ObjectId& id);

/// The identifier produced by the n-th creation (0-based) performed by
/// `creator`, given the per-class allocation ordinal `index`.
ObjectId allocate_created(const ObjectId& creator, const ClassName& cls, std::uint64_t index,
                          std::uint64_t ordinal);

}  // namespace umlsem
