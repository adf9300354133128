#include "umlsem/elaborate/flatten.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace umlsem::elab {

namespace {

using Kind = dsl::DiagramState::Kind;
using Config = std::vector<int>;  // sorted leaf node ids

struct Node {
  std::string name;
  Kind kind = Kind::Simple;
  int parent = -1;
  std::vector<int> children;
  int initial = -1;
  SourcePos pos;
};

class Flattener {
 public:
  explicit Flattener(const dsl::StateDiagramAst& ast) : ast_(ast) {
    add(ast.root, -1, "<top level>");
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const auto& n = nodes_[i];
      if (n.kind == Kind::Or && n.initial < 0) {
        throw Error(ErrorKind::NoInitial, "'" + n.name + "' has no initial substate", n.pos);
      }
    }
  }

  FlatStateDiagram run() {
    FlatStateDiagram out;
    out.owner = ast_.owner;
    out.unhandled = ast_.unhandled;
    out.decls = ast_.transitions;
    auto all = configs(0);
    for (const auto& c : all) out.states.push_back(label(c));
    out.initial.push_back(label(sorted(init(0))));

    for (std::size_t t = 0; t < ast_.transitions.size(); ++t) {
      const auto& decl = ast_.transitions[t];
      int s = lookup(decl.source, decl.pos);
      int d = lookup(decl.destination, decl.pos);
      int scope = scope_of(s, d);
      Config entry = entry_leaves(scope, d);
      for (const auto& c : all) {
        if (!std::any_of(c.begin(), c.end(), [&](int leaf) { return within(leaf, s); })) continue;
        Config next;
        for (int leaf : c) {
          if (!within(leaf, scope)) next.push_back(leaf);
        }
        next.insert(next.end(), entry.begin(), entry.end());
        out.transitions.push_back({label(c), label(sorted(std::move(next))), t});
      }
    }
    return out;
  }

 private:
  int add(const dsl::DiagramState& s, int parent, const std::string& fallback_name) {
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back({s.name.empty() ? fallback_name : s.name, s.kind, parent, {}, -1, s.pos});
    if (parent >= 0) by_name_[s.name] = id;
    // Or-states with no children are leaves as far as configurations go,
    // except for the top level which must have an initial state.
    if (s.kind == Kind::Or && s.children.empty() && parent >= 0) {
      nodes_[id].kind = Kind::Simple;
      return id;
    }
    for (const auto& c : s.children) {
      int child = add(c, id, c.name);
      nodes_[id].children.push_back(child);
      if (s.initial && c.name == *s.initial) nodes_[id].initial = child;
    }
    return id;
  }

  int lookup(const std::string& name, const SourcePos& pos) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw ResolveError(name, pos, "undeclared state");
    return it->second;
  }

  /// True iff `leaf` is `ancestor` or lies below it.
  bool within(int leaf, int ancestor) const {
    for (int n = leaf; n >= 0; n = nodes_[n].parent) {
      if (n == ancestor) return true;
    }
    return false;
  }

  int scope_of(int s, int d) const {
    for (int n = nodes_[s].parent; n >= 0; n = nodes_[n].parent) {
      if (nodes_[n].kind == Kind::Or && n != d && within(d, n)) return n;
    }
    return 0;
  }

  std::vector<Config> configs(int n) const {
    const auto& node = nodes_[n];
    switch (node.kind) {
      case Kind::Simple: return {{n}};
      case Kind::Or: {
        std::vector<Config> out;
        for (int c : node.children) {
          auto sub = configs(c);
          out.insert(out.end(), sub.begin(), sub.end());
        }
        return out;
      }
      case Kind::And: {
        std::vector<Config> out{{}};
        for (int r : node.children) {
          std::vector<Config> next;
          for (const auto& prefix : out) {
            for (const auto& part : configs(r)) {
              Config c = prefix;
              c.insert(c.end(), part.begin(), part.end());
              next.push_back(std::move(c));
            }
          }
          out = std::move(next);
        }
        for (auto& c : out) std::sort(c.begin(), c.end());
        return out;
      }
    }
    return {};
  }

  Config init(int n) const {
    const auto& node = nodes_[n];
    switch (node.kind) {
      case Kind::Simple: return {n};
      case Kind::Or: return init(node.initial);
      case Kind::And: {
        Config out;
        for (int r : node.children) {
          auto sub = init(r);
          out.insert(out.end(), sub.begin(), sub.end());
        }
        return out;
      }
    }
    return {};
  }

  /// Leaves entered when control moves from `scope` down to `d`: the default
  /// configuration of d plus the initial configurations of sibling regions
  /// of every And-state passed on the way.
  Config entry_leaves(int scope, int d) const {
    Config out = init(d);
    int below = d;
    for (int n = nodes_[d].parent; n >= 0 && n != scope; below = n, n = nodes_[n].parent) {
      if (nodes_[n].kind != Kind::And) continue;
      for (int r : nodes_[n].children) {
        if (r == below) continue;
        auto sub = init(r);
        out.insert(out.end(), sub.begin(), sub.end());
      }
    }
    return out;
  }

  static Config sorted(Config c) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
  }

  FlatLabel label(const Config& c) const {
    FlatLabel out;
    for (int leaf : c) out.push_back(nodes_[leaf].name);
    return out;
  }

  const dsl::StateDiagramAst& ast_;
  std::vector<Node> nodes_;
  std::map<std::string, int> by_name_;
};

}  // namespace

FlatStateDiagram flatten(const dsl::StateDiagramAst& ast) { return Flattener(ast).run(); }

}  // namespace umlsem::elab
