#include <set>

#include "parser_common.hpp"
#include "umlsem/dsl/parser.hpp"

namespace umlsem::dsl {

namespace {

using detail::Cursor;

class StateDiagramParser {
 public:
  StateDiagramParser(std::string_view text, std::string_view document) : c_(text, document) {
    ast_.document = std::string(document);
  }

  StateDiagramAst parse() {
    c_.skip_separators();
    ast_.root.kind = DiagramState::Kind::Or;
    ast_.root.pos = c_.peek().pos;
    if (c_.peek().is_word("statechart")) header();
    body(ast_.root, /*top_level=*/true);
    if (!c_.at_end()) c_.fail({"'state'", "'initial'", "'trans'"});
    resolve();
    return std::move(ast_);
  }

 private:
  void header() {
    c_.next();
    ast_.owner = c_.qualified_name();
    if (c_.accept_word("unhandled")) {
      if (c_.accept_word("ignore")) ast_.unhandled = UnhandledPolicy::Ignore;
      else if (c_.accept_word("chaos")) ast_.unhandled = UnhandledPolicy::Chaos;
      else c_.fail({"'ignore'", "'chaos'"});
    }
    c_.end_statement();
  }

  std::string fresh_name() { return "$s" + std::to_string(++anonymous_); }

  // Parses statements into `owner` until '}' or end of input.
  void body(DiagramState& owner, bool top_level) {
    bool has_regions = false;
    bool has_states = false;
    SourcePos initial_pos;
    while (!c_.at_end() && !c_.peek().is_punct("}")) {
      const Token& t = c_.peek();
      if (t.is_word("initial")) {
        if (owner.initial) c_.fail({"at most one 'initial' per composite state"});
        c_.next();
        initial_pos = c_.peek().pos;
        owner.initial = c_.expect_ident("state name").text;
        has_states = true;
      } else if (t.is_word("state")) {
        owner.children.push_back(state());
        has_states = true;
      } else if (t.is_word("region") && !top_level) {
        owner.children.push_back(region());
        has_regions = true;
      } else if (t.is_word("trans")) {
        ast_.transitions.push_back(transition());
      } else {
        std::vector<std::string> expected{"'state'", "'initial'", "'trans'"};
        if (!top_level) expected.push_back("'region'");
        c_.fail(expected);
      }
      if (has_regions && has_states) c_.fail({"either regions or substates, not both"});
      c_.end_statement();
    }
    if (has_regions) owner.kind = DiagramState::Kind::And;
    if (owner.initial) {
      bool found = false;
      for (const auto& ch : owner.children) found = found || ch.name == *owner.initial;
      if (!found) throw ResolveError(*owner.initial, initial_pos, "initial state is not a direct substate");
    }
  }

  DiagramState state() {
    DiagramState s;
    s.pos = c_.next().pos;
    if (c_.peek().kind == Token::Kind::Ident && !detail::is_reserved(c_.peek().text)) {
      s.name = c_.next().text;
    } else {
      s.name = fresh_name();
      s.anonymous = true;
    }
    declare(s.name, s.pos);
    if (c_.accept_punct("{")) {
      s.kind = DiagramState::Kind::Or;
      c_.skip_separators();
      body(s, false);
      c_.expect_punct("}");
    }
    return s;
  }

  DiagramState region() {
    DiagramState r;
    r.pos = c_.next().pos;
    r.is_region = true;
    r.kind = DiagramState::Kind::Or;
    if (c_.peek().kind == Token::Kind::Ident && !detail::is_reserved(c_.peek().text)) {
      r.name = c_.next().text;
    } else {
      r.name = fresh_name();
      r.anonymous = true;
    }
    declare(r.name, r.pos);
    c_.expect_punct("{");
    c_.skip_separators();
    body(r, false);
    if (r.kind == DiagramState::Kind::And) c_.fail({"substates in a region"});
    c_.expect_punct("}");
    return r;
  }

  void declare(const std::string& name, const SourcePos& pos) {
    if (!names_.insert(name).second) throw ResolveError(name, pos, "duplicate state");
  }

  TransitionDecl transition() {
    TransitionDecl t;
    t.pos = c_.next().pos;
    source_refs_.push_back(c_.peek().pos);
    t.source = c_.expect_ident("source state").text;
    c_.expect_punct("->");
    dest_refs_.push_back(c_.peek().pos);
    t.destination = c_.expect_ident("destination state").text;
    std::set<std::string> binders;
    if (c_.accept_word("on")) {
      EventSig ev;
      ev.pos = c_.peek().pos;
      ev.selector = c_.expect_ident("event selector").text;
      if (c_.peek().is_punct("(")) {
        ev.any_args = false;
        ev.args = detail::arg_patterns(c_, /*allow_binders=*/true);
        for (const auto& a : ev.args) {
          if (a.kind == ArgPattern::Kind::Binder && !binders.insert(a.binder).second)
            throw ResolveError(a.binder, ev.pos, "duplicate event parameter");
        }
      }
      t.event = std::move(ev);
    }
    if (c_.accept_punct("[")) {
      t.guard = c_.expression();
      c_.expect_punct("]");
    }
    if (c_.accept_punct("/")) {
      do t.sends.push_back(send(binders));
      while (c_.accept_punct(","));
    }
    return t;
  }

  std::vector<ValueExpr> value_args(const std::set<std::string>& binders) {
    std::vector<ValueExpr> out;
    c_.expect_punct("(");
    if (c_.accept_punct(")")) return out;
    do {
      ValueExpr v;
      if (c_.at_literal()) {
        v.kind = ValueExpr::Kind::Literal;
        v.literal = c_.literal();
      } else if (c_.accept_word("self")) {
        v.kind = ValueExpr::Kind::Self;
      } else {
        v.name = c_.expect_ident("argument").text;
        v.kind = binders.count(v.name) ? ValueExpr::Kind::Binder : ValueExpr::Kind::Attribute;
      }
      out.push_back(std::move(v));
    } while (c_.accept_punct(","));
    c_.expect_punct(")");
    return out;
  }

  SendDecl send(const std::set<std::string>& binders) {
    SendDecl s;
    s.pos = c_.peek().pos;
    if (c_.accept_word("new")) {
      s.target.kind = SendTarget::Kind::Create;
      s.target.name = c_.qualified_name();
      s.selector = "create";
      s.args = value_args(binders);
      return s;
    }
    s.call = c_.accept_word("call");
    std::vector<std::string> path{c_.expect_ident("send target").text};
    while (c_.accept_punct(".")) path.push_back(c_.expect_ident("selector").text);
    if (path.size() < 2) c_.fail({"'.'"});
    s.selector = path.back();
    path.pop_back();
    std::string target = path.front();
    for (std::size_t i = 1; i < path.size(); ++i) target += "." + path[i];
    s.target.name = target;
    s.target.kind = (path.size() == 1 && binders.count(target)) ? SendTarget::Kind::Binder : SendTarget::Kind::Link;
    s.args = value_args(binders);
    return s;
  }

  void resolve() {
    for (std::size_t i = 0; i < ast_.transitions.size(); ++i) {
      const auto& t = ast_.transitions[i];
      if (!names_.count(t.source)) throw ResolveError(t.source, source_refs_[i], "undeclared state");
      if (!names_.count(t.destination)) throw ResolveError(t.destination, dest_refs_[i], "undeclared state");
    }
  }

  Cursor c_;
  StateDiagramAst ast_;
  int anonymous_ = 0;
  std::set<std::string> names_;
  std::vector<SourcePos> source_refs_;
  std::vector<SourcePos> dest_refs_;
};

}  // namespace

StateDiagramAst parse_state_diagram(std::string_view text, std::string_view document) {
  return StateDiagramParser(text, document).parse();
}

}  // namespace umlsem::dsl
