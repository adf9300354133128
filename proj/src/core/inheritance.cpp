#include "umlsem/core/inheritance.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace umlsem {

InheritanceRelation::InheritanceRelation(std::set<ClassName> classes, std::vector<Pair> direct)
    : classes_(std::move(classes)), direct_(std::move(direct)) {
  for (const auto& [sub, super] : direct_) {
    require(sub);
    require(super);
  }
  // Reflexive-transitive closure by a search from every class.
  std::map<ClassName, std::vector<ClassName>> up;
  for (const auto& [sub, super] : direct_) up[sub].push_back(super);
  for (const auto& c : classes_) {
    std::vector<ClassName> stack{c};
    std::set<ClassName> seen{c};
    while (!stack.empty()) {
      ClassName cur = stack.back();
      stack.pop_back();
      closure_.emplace(c, cur);
      for (const auto& s : up[cur]) {
        if (seen.insert(s).second) stack.push_back(s);
      }
    }
  }
}

InheritanceRelation InheritanceRelation::from_table(const ClassTable& table) {
  std::set<ClassName> classes;
  std::vector<Pair> direct;
  for (const auto& [name, entry] : table) {
    classes.insert(name);
    for (const auto& s : entry.supers) direct.emplace_back(name, s);
  }
  for (const auto& [sub, super] : direct) {
    if (!classes.count(super)) throw Error(ErrorKind::UnknownClass, "unknown superclass '" + super + "'");
  }
  return InheritanceRelation(std::move(classes), std::move(direct));
}

void InheritanceRelation::require(const ClassName& c) const {
  if (!classes_.count(c)) throw Error(ErrorKind::UnknownClass, "unknown class '" + c + "'");
}

bool InheritanceRelation::is_subclass(const ClassName& c, const ClassName& d) const {
  require(c);
  require(d);
  return closure_.count({c, d}) > 0;
}

InheritanceRelation InheritanceRelation::closed() const {
  return InheritanceRelation(classes_, std::vector<Pair>(closure_.begin(), closure_.end()));
}

bool InheritanceRelation::is_acyclic() const { return cycles().empty(); }

std::vector<std::vector<ClassName>> InheritanceRelation::cycles() const {
  std::vector<std::vector<ClassName>> out;
  std::set<ClassName> placed;
  for (const auto& c : classes_) {
    if (placed.count(c)) continue;
    std::vector<ClassName> group;
    for (const auto& d : classes_) {
      if (closure_.count({c, d}) && closure_.count({d, c})) group.push_back(d);
    }
    bool self_loop = std::any_of(direct_.begin(), direct_.end(),
                                 [&](const Pair& p) { return p.first == c && p.second == c; });
    if (group.size() > 1 || self_loop) {
      for (const auto& g : group) placed.insert(g);
      out.push_back(group);
    }
  }
  return out;
}

std::vector<ClassName> InheritanceRelation::ancestors(const ClassName& c) const {
  require(c);
  std::vector<ClassName> out;
  for (const auto& [sub, super] : closure_) {
    if (sub == c) out.push_back(super);
  }
  return out;
}

std::vector<ClassName> InheritanceRelation::descendants(const ClassName& c) const {
  require(c);
  std::vector<ClassName> out;
  for (const auto& [sub, super] : closure_) {
    if (super == c) out.push_back(sub);
  }
  return out;
}

IdSetSpec ids_of(const ClassTable& table, const InheritanceRelation& rel, const ClassName& c, bool polymorphic) {
  auto concrete = [&](const ClassName& k) {
    auto it = table.find(k);
    return it != table.end() && !it->second.is_abstract;
  };
  if (!table.count(c)) throw Error(ErrorKind::UnknownClass, "unknown class '" + c + "'");
  std::vector<ClassName> classes;
  if (polymorphic) {
    for (const auto& d : rel.descendants(c)) {
      if (concrete(d)) classes.push_back(d);
    }
  } else if (concrete(c)) {
    classes.push_back(c);
  }
  return IdSetSpec::of_classes(std::move(classes));
}

}  // namespace umlsem
