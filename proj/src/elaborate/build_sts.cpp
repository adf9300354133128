#include "umlsem/elaborate/build_sts.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "umlsem/dsl/printer.hpp"
#include "umlsem/elaborate/expr_eval.hpp"

namespace umlsem::elab {

namespace {

using Valuation = std::map<std::string, Value>;

/// Every combination of values for the given (name, domain) pairs.
std::vector<Valuation> product(const std::vector<std::pair<std::string, std::vector<Value>>>& domains) {
  std::vector<Valuation> out{{}};
  for (const auto& [name, dom] : domains) {
    std::vector<Valuation> next;
    next.reserve(out.size() * dom.size());
    for (const auto& v : out) {
      for (const auto& x : dom) {
        auto w = v;
        w[name] = x;
        next.push_back(std::move(w));
      }
    }
    out = std::move(next);
  }
  return out;
}

struct DeclInfo {
  std::map<std::string, TypeRef> binders;
  std::vector<std::pair<std::string, std::vector<Value>>> guard_binders;
  std::string guard_text;
};

class Builder {
 public:
  Builder(const FlatStateDiagram& flat, const StaticModel& model, const ClassName& cls, const StsOptions& options)
      : flat_(flat), model_(model), cls_(cls), options_(options), sig_(model.signature(cls)) {
    // A call expects the callee's "<selector>_return" reply.
    for (const auto& d : flat_.decls) {
      for (const auto& s : d.sends) {
        if (s.call) sig_.methods.emplace(s.selector + "_return", MethodSig{});
      }
    }
  }

  StateTransitionSystem run() {
    StateTransitionSystem sts;
    sts.owner = cls_;
    sts.policy = options_.unhandled.value_or(flat_.unhandled.value_or(UnhandledPolicy::Ignore));

    std::set<std::string> relevant;
    for (const auto& d : flat_.decls) infos_.push_back(analyse(d, relevant));
    sts.relevant_attributes.assign(relevant.begin(), relevant.end());

    std::vector<std::pair<std::string, std::vector<Value>>> attr_domains;
    for (const auto& a : sts.relevant_attributes) attr_domains.emplace_back(a, *sig_.attributes.at(a).finite_domain());
    valuations_ = product(attr_domains);

    for (const auto& label : flat_.states) {
      for (const auto& v : valuations_) {
        index_[{label, v}] = sts.states.size();
        sts.states.push_back({label, v});
      }
    }
    for (const auto& label : flat_.initial) {
      for (const auto& v : valuations_) sts.initial.push_back(index_.at({label, v}));
    }

    for (const auto& ft : flat_.transitions) add_diagram_transitions(sts, ft);
    add_fallbacks(sts);
    sts.alphabet = alphabet();
    sts.finalize();
    return sts;
  }

 private:
  DeclInfo analyse(const dsl::TransitionDecl& d, std::set<std::string>& relevant) {
    DeclInfo info;
    if (d.event) {
      auto m = sig_.methods.find(d.event->selector);
      if (m == sig_.methods.end()) {
        throw Error(ErrorKind::UnknownSelector,
                    "'" + d.event->selector + "' is not an operation of " + cls_, d.event->pos);
      }
      const auto& params = m->second.params;
      if (!d.event->any_args) {
        if (d.event->args.size() != params.size()) {
          throw Error(ErrorKind::UnknownSelector,
                      "'" + d.event->selector + "' takes " + std::to_string(params.size()) + " argument(s), " +
                          std::to_string(d.event->args.size()) + " given",
                      d.event->pos);
        }
        for (std::size_t i = 0; i < params.size(); ++i) {
          const auto& a = d.event->args[i];
          if (a.kind == ArgPattern::Kind::Binder) info.binders[a.binder] = params[i];
          if (a.kind == ArgPattern::Kind::Literal && !params[i].admits(a.literal)) {
            throw Error(ErrorKind::GuardType,
                        "argument " + a.literal.to_string() + " does not fit parameter type " + params[i].to_string(),
                        d.event->pos);
          }
        }
      }
    }
    if (d.guard) {
      NameTypes names = [&](const std::string& n) -> std::optional<TypeRef> {
        if (auto b = info.binders.find(n); b != info.binders.end()) return b->second;
        if (auto a = sig_.attributes.find(n); a != sig_.attributes.end()) return a->second;
        return std::nullopt;
      };
      if (check_expr(*d.guard, names, false) != TypeRef::Base::Bool) {
        throw Error(ErrorKind::GuardType, "guard is not a bool expression", d.guard->pos);
      }
      for (const auto& n : free_names(*d.guard)) {
        auto t = *names(n);
        auto dom = t.finite_domain();
        if (!dom) {
          throw Error(ErrorKind::GuardType, "guard variable '" + n + "' of type " + t.to_string() + " has no finite domain",
                      d.guard->pos);
        }
        if (info.binders.count(n)) {
          info.guard_binders.emplace_back(n, *dom);
        } else {
          relevant.insert(n);
        }
      }
      info.guard_text = dsl::print(*d.guard);
    }
    for (const auto& s : d.sends) check_send(s, info);
    return info;
  }

  void check_send(const dsl::SendDecl& s, const DeclInfo& info) {
    switch (s.target.kind) {
      case SendTarget::Kind::Link:
        if (model_.fields_named(cls_, s.target.name).empty()) {
          throw ResolveError(s.target.name, s.pos, "no association end of " + cls_ + " with this name");
        }
        break;
      case SendTarget::Kind::Create:
        if (!model_.has_class(s.target.name)) throw Error(ErrorKind::UnknownClass, "unknown class '" + s.target.name + "'", s.pos);
        if (model_.is_abstract(s.target.name)) throw ResolveError(s.target.name, s.pos, "abstract class cannot be instantiated");
        break;
      case SendTarget::Kind::Binder: break;
    }
    for (const auto& a : s.args) {
      if (a.kind == ValueExpr::Kind::Attribute && !sig_.attributes.count(a.name)) {
        throw ResolveError(a.name, s.pos, "neither an event parameter nor an attribute of " + cls_);
      }
      if (a.kind == ValueExpr::Kind::Binder && !info.binders.count(a.name)) {
        throw ResolveError(a.name, s.pos, "unbound event parameter");
      }
    }
  }

  void charge(std::size_t n = 1) {
    count_ += n;
    if (count_ > options_.budget) {
      throw Error(ErrorKind::HorizonTooLarge,
                  "state transition system of " + cls_ + " exceeds " + std::to_string(options_.budget) + " transitions");
    }
  }

  void add_diagram_transitions(StateTransitionSystem& sts, const FlatTransition& ft) {
    const auto& decl = flat_.decls.at(ft.decl);
    const auto& info = infos_.at(ft.decl);
    auto binder_values = product(info.guard_binders);
    for (const auto& v : valuations_) {
      for (const auto& b : binder_values) {
        if (decl.guard) {
          auto lookup = [&](const std::string& n) -> Value {
            if (auto it = b.find(n); it != b.end()) return it->second;
            return v.at(n);
          };
          if (!evaluate(*decl.guard, lookup).as_bool()) continue;
        }
        StsTransition t;
        t.source = index_.at({ft.source, v});
        t.destination = index_.at({ft.destination, v});
        if (decl.event) {
          MessagePattern p{decl.event->selector, decl.event->args, decl.event->any_args};
          for (auto& a : p.args) {
            if (a.kind == ArgPattern::Kind::Binder && b.count(a.binder)) a = ArgPattern::lit(b.at(a.binder));
          }
          t.input = std::move(p);
        }
        for (const auto& s : decl.sends) {
          OutputAction o{s.target, s.selector, s.args, s.call};
          for (auto& a : o.args) {
            if (a.kind == ValueExpr::Kind::Binder && b.count(a.name)) a = ValueExpr{ValueExpr::Kind::Literal, b.at(a.name), {}};
          }
          t.outputs.push_back(std::move(o));
        }
        t.origin = TransitionOrigin::Diagram;
        t.diagram_transition = ft.decl;
        t.guard = info.guard_text;
        t.pos = decl.pos;
        charge();
        sts.delta.push_back(std::move(t));
      }
    }
  }

  static bool covers(const MessagePattern& p) {
    return p.any_args ||
           std::all_of(p.args.begin(), p.args.end(), [](const ArgPattern& a) { return a.kind != ArgPattern::Kind::Literal; });
  }

  static bool binder_free(const OutputAction& o) {
    if (o.target.kind == SendTarget::Kind::Binder) return false;
    return std::none_of(o.args.begin(), o.args.end(), [](const ValueExpr& e) { return e.kind == ValueExpr::Kind::Binder; });
  }

  void add_fallbacks(StateTransitionSystem& sts) {
    std::set<std::pair<std::size_t, std::string>> covered;
    std::vector<OutputAction> vocab;
    for (const auto& t : sts.delta) {
      if (t.input && covers(*t.input)) covered.insert({t.source, t.input->selector});
      for (const auto& o : t.outputs) {
        if (binder_free(o) && std::find(vocab.begin(), vocab.end(), o) == vocab.end()) vocab.push_back(o);
      }
    }
    std::vector<std::vector<OutputAction>> chaos_outputs{{}};
    if (sts.policy == UnhandledPolicy::Chaos) {
      std::vector<std::vector<OutputAction>> layer{{}};
      for (std::size_t len = 1; len <= options_.chaos_output_length && !vocab.empty(); ++len) {
        std::vector<std::vector<OutputAction>> next;
        for (const auto& prefix : layer) {
          for (const auto& o : vocab) {
            auto seq = prefix;
            seq.push_back(o);
            next.push_back(std::move(seq));
          }
        }
        chaos_outputs.insert(chaos_outputs.end(), next.begin(), next.end());
        layer = std::move(next);
      }
    }
    const std::size_t n = sts.states.size();
    for (std::size_t s = 0; s < n; ++s) {
      for (const auto& [selector, m] : sig_.methods) {
        if (covered.count({s, selector})) continue;
        MessagePattern any{selector, {}, true};
        if (sts.policy == UnhandledPolicy::Ignore) {
          charge();
          sts.delta.push_back({s, any, {}, s, TransitionOrigin::Default, std::nullopt, "", {}});
          continue;
        }
        charge(n * chaos_outputs.size());
        for (std::size_t d = 0; d < n; ++d) {
          for (const auto& outs : chaos_outputs) {
            sts.delta.push_back({s, any, outs, d, TransitionOrigin::Chaos, std::nullopt, "", {}});
          }
        }
      }
    }
  }

  /// Finite representatives of every accepted message. Infinite parameter
  /// domains contribute their default value plus every literal the diagram
  /// matches on at that position.
  std::vector<InputSymbol> alphabet() const {
    std::vector<InputSymbol> out;
    for (const auto& [selector, m] : sig_.methods) {
      std::vector<std::pair<std::string, std::vector<Value>>> doms;
      for (std::size_t i = 0; i < m.params.size(); ++i) {
        std::vector<Value> dom;
        if (auto f = m.params[i].finite_domain()) {
          dom = *f;
        } else {
          dom.push_back(m.params[i].default_value());
          for (const auto& d : flat_.decls) {
            if (!d.event || d.event->selector != selector || d.event->any_args || i >= d.event->args.size()) continue;
            const auto& a = d.event->args[i];
            if (a.kind == ArgPattern::Kind::Literal && std::find(dom.begin(), dom.end(), a.literal) == dom.end())
              dom.push_back(a.literal);
          }
        }
        doms.emplace_back(std::to_string(i), std::move(dom));
      }
      for (const auto& v : product(doms)) {
        InputSymbol sym{selector, {}};
        for (std::size_t i = 0; i < m.params.size(); ++i) sym.args.push_back(v.at(std::to_string(i)));
        out.push_back(std::move(sym));
      }
    }
    return out;
  }

  const FlatStateDiagram& flat_;
  const StaticModel& model_;
  const ClassName& cls_;
  const StsOptions& options_;
  Signature sig_;
  std::vector<DeclInfo> infos_;
  std::vector<Valuation> valuations_;
  std::map<std::pair<FlatLabel, Valuation>, std::size_t> index_;
  std::size_t count_ = 0;
};

}  // namespace

StateTransitionSystem build_sts(const FlatStateDiagram& flat, const StaticModel& model, const ClassName& cls,
                                const StsOptions& options) {
  if (!model.has_class(cls)) throw Error(ErrorKind::UnknownClass, "unknown class '" + cls + "'");
  if (!flat.owner.empty() && flat.owner != cls) {
    throw Error(ErrorKind::Precondition, "state diagram belongs to '" + flat.owner + "', not '" + cls + "'");
  }
  return Builder(flat, model, cls, options).run();
}

StateTransitionSystem build_sts(const dsl::StateDiagramAst& ast, const StaticModel& model, const StsOptions& options) {
  if (ast.owner.empty()) throw Error(ErrorKind::Precondition, "state diagram has no owner class header");
  return build_sts(flatten(ast), model, ast.owner, options);
}

}  // namespace umlsem::elab
