#include "umlsem/core/signature.hpp"

#include "umlsem/core/inheritance.hpp"

namespace umlsem {

std::string MethodSig::to_string(const std::string& selector) const {
  std::string out = selector + "(";
  for (std::size_t i = 0; i < params.size(); ++i) out += (i ? ", " : "") + params[i].to_string();
  out += ")";
  if (result) out += ": " + result->to_string();
  return out;
}

bool Signature::has_member(const std::string& name) const {
  return attributes.count(name) > 0 || methods.count(name) > 0;
}

bool Signature::subset_of(const Signature& other) const {
  for (const auto& [name, type] : attributes) {
    auto it = other.attributes.find(name);
    if (it == other.attributes.end() || it->second != type) return false;
  }
  for (const auto& [name, sig] : methods) {
    auto it = other.methods.find(name);
    if (it == other.methods.end() || it->second != sig) return false;
  }
  return true;
}

namespace {

// Ancestors ordered nearest-first (breadth-first over direct supers) so that
// the lenient merge keeps the declaration closest to `c`.
std::vector<ClassName> ancestors_nearest_first(const ClassTable& table, const ClassName& c) {
  std::vector<ClassName> order{c};
  std::set<ClassName> seen{c};
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto it = table.find(order[i]);
    if (it == table.end()) continue;
    for (const auto& s : it->second.supers) {
      if (seen.insert(s).second) order.push_back(s);
    }
  }
  return order;
}

Signature merge(const ClassTable& table, const ClassName& c, std::vector<SignatureClash>& clashes) {
  Signature sig;
  std::map<std::string, ClassName> owner;
  for (const auto& cls : ancestors_nearest_first(table, c)) {
    auto it = table.find(cls);
    if (it == table.end()) continue;
    const Signature& decl = it->second.declared;
    auto clash = [&](const std::string& name) {
      clashes.push_back(SignatureClash{c, name, owner.at(name), cls});
    };
    for (const auto& [name, type] : decl.attributes) {
      if (auto a = sig.attributes.find(name); a != sig.attributes.end()) {
        if (a->second != type) clash(name);
      } else if (sig.methods.count(name)) {
        clash(name);
      } else {
        sig.attributes.emplace(name, type);
        owner.emplace(name, cls);
      }
    }
    for (const auto& [name, m] : decl.methods) {
      if (auto a = sig.methods.find(name); a != sig.methods.end()) {
        if (a->second != m) clash(name);
      } else if (sig.attributes.count(name)) {
        clash(name);
      } else {
        sig.methods.emplace(name, m);
        owner.emplace(name, cls);
      }
    }
  }
  return sig;
}

}  // namespace

Signature effective_signature(const ClassTable& table, const InheritanceRelation& rel, const ClassName& c,
                              std::vector<SignatureClash>& clashes) {
  if (!rel.classes().count(c)) throw Error(ErrorKind::UnknownClass, "unknown class '" + c + "'");
  return merge(table, c, clashes);
}

Signature effective_signature(const ClassTable& table, const InheritanceRelation& rel, const ClassName& c) {
  std::vector<SignatureClash> clashes;
  Signature sig = effective_signature(table, rel, c, clashes);
  if (!clashes.empty()) {
    const auto& first = clashes.front();
    SourcePos pos;
    if (auto it = table.find(first.declared_in); it != table.end()) pos = it->second.pos;
    throw Error(ErrorKind::SignatureConflict,
                "member '" + first.member + "' of class '" + c + "' declared in '" + first.declared_in +
                    "' conflicts with the declaration in '" + first.conflicts_with + "'",
                pos);
  }
  return sig;
}

}  // namespace umlsem
