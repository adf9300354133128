#include <algorithm>

#include "doctest.h"
#include "support/gen.hpp"
#include "support/oracles.hpp"
#include "umlsem/dsl/parser.hpp"
#include "umlsem/elaborate/blackbox.hpp"
#include "umlsem/elaborate/build_sts.hpp"
#include "umlsem/elaborate/expr_eval.hpp"
#include "umlsem/elaborate/flatten.hpp"

using namespace umlsem;
using namespace umlsem::elab;

namespace {

StaticModel model_of(const std::string& text) { return elaborate_static(dsl::parse_class_model(text)); }

ErrorKind kind_of_error(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Precondition;
}

const LinkField* field(const std::vector<LinkField>& fields, const std::string& display) {
  for (const auto& f : fields) {
    if (f.display == display) return &f;
  }
  return nullptr;
}

std::size_t count_origin(const StateTransitionSystem& s, TransitionOrigin o) {
  return static_cast<std::size_t>(
      std::count_if(s.delta.begin(), s.delta.end(), [&](const StsTransition& t) { return t.origin == o; }));
}

const char* kOne = "class K {\n  attr x: int[0..1]\n  op f()\n  op g(int[0..2])\n}\nassoc peer K[0..*] -- K[0..*]\n";

}  // namespace

TEST_CASE("elaborate_static: link fields with multiplicities") {
  auto m = model_of(
      "class Branch { attr stock: int }\nclass CentralOffice {}\nassoc coordinates CentralOffice[1] -- Branch[0..*]");
  auto b = m.link_fields("Branch");
  REQUIRE(field(b, "coordinates.CentralOffice"));
  CHECK(field(b, "coordinates.CentralOffice")->mult == dsl::Multiplicity{1, 1});
  auto c = m.link_fields("CentralOffice");
  REQUIRE(field(c, "coordinates.Branch"));
  CHECK(field(c, "coordinates.Branch")->mult == dsl::Multiplicity{0, std::nullopt});

  auto plain = model_of("class A { attr x: int }\nclass B {}");
  CHECK(plain.link_fields("A").empty());
  CHECK(plain.signature("A").attributes.size() == 1);
}

TEST_CASE("elaborate_static: inherited link fields and errors") {
  auto m = model_of("abstract class Site {}\nclass Branch extends Site {}\nclass Office {}\nassoc serves Office[1] -- Site[0..*]");
  CHECK(field(m.link_fields("Branch"), "serves.Office"));
  CHECK(m.is_abstract("Site"));
  CHECK(kind_of_error([] { model_of("class Whole {}\nclass Part {}\nassoc has composition Whole[0..2] -- Part[0..*]"); }) ==
        ErrorKind::CompositionMultiplicity);
  CHECK(kind_of_error([] { model_of("class A extends B {}\nclass B extends A {}"); }) == ErrorKind::CyclicInheritance);
  CHECK(kind_of_error([] { model_of("class A { attr x: int }\nclass B extends A { attr x: bool }"); }) ==
        ErrorKind::SignatureConflict);
  auto lenient = elaborate_static_lenient(dsl::parse_class_model("class A extends B {}\nclass B extends A {}"));
  CHECK(lenient.issues.size() == 1);
}

TEST_CASE("flatten: identity on simple diagrams, products, composite sources, missing initial") {
  auto simple = flatten(dsl::parse_state_diagram("initial A\nstate A\nstate B\ntrans A -> B on f"));
  CHECK(simple.states == std::vector<FlatLabel>{{"A"}, {"B"}});
  CHECK(simple.initial == std::vector<FlatLabel>{{"A"}});
  CHECK(simple.transitions.size() == 1);

  auto product = flatten(dsl::parse_state_diagram(
      "initial P\nstate P {\n region R1 { initial a; state a; state b }\n region R2 { initial c; state c; state d; state e }\n}"));
  CHECK(product.states.size() == 6);
  CHECK(product.initial == std::vector<FlatLabel>{{"a", "c"}});

  auto out_of_or = flatten(dsl::parse_state_diagram(
      "initial O\nstate O { initial x; state x; state y; state z }\nstate Done\ntrans O -> Done on stop"));
  CHECK(out_of_or.transitions.size() == 3);
  for (const auto& t : out_of_or.transitions) CHECK(t.destination == FlatLabel{"Done"});

  auto into = flatten(dsl::parse_state_diagram(
      "initial A\nstate A\nstate P {\n region R1 { initial a; state a; state b }\n region R2 { initial c; state c }\n}\n"
      "trans A -> b on go"));
  REQUIRE(into.transitions.size() == 1);
  CHECK(into.transitions[0].destination == FlatLabel{"b", "c"});

  CHECK(kind_of_error([] { flatten(dsl::parse_state_diagram("initial O\nstate O { state x }")); }) ==
        ErrorKind::NoInitial);
}

TEST_CASE("build_sts: ignore self-loops, chaos, guards over finite domains") {
  auto m = model_of("class K { op f() }");
  auto ignore = build_sts(dsl::parse_state_diagram("statechart K\ninitial S\nstate S"), m);
  REQUIRE(ignore.delta.size() == 1);
  CHECK(ignore.delta[0].origin == TransitionOrigin::Default);
  CHECK(ignore.delta[0].source == ignore.delta[0].destination);
  CHECK(ignore.delta[0].input->selector == "f");
  CHECK(ignore.delta[0].outputs.empty());

  auto two = model_of("class K { op f()\n op g() }\nassoc peer K[0..*] -- K[0..*]");
  StsOptions chaos;
  chaos.unhandled = UnhandledPolicy::Chaos;
  auto c = build_sts(dsl::parse_state_diagram("statechart K\ninitial S\nstate S\nstate T\ntrans S -> T on g / peer.g()"),
                     two, chaos);
  // (S, f): 2 destinations x (nothing or peer.g()); (T, f) and (T, g) likewise.
  CHECK(count_origin(c, TransitionOrigin::Chaos) == 3 * 2 * 2);
  CHECK(count_origin(c, TransitionOrigin::Default) == 0);

  auto m1 = model_of(kOne);
  auto g = build_sts(dsl::parse_state_diagram("statechart K\ninitial S\nstate S\ntrans S -> S on f [x > 0] / peer.f()"), m1);
  CHECK(g.states.size() == 2);
  std::vector<const StsTransition*> fired;
  for (const auto& t : g.delta) {
    if (t.origin == TransitionOrigin::Diagram) fired.push_back(&t);
  }
  REQUIRE(fired.size() == 1);
  CHECK(g.states[fired[0]->source].valuation.at("x") == Value::integer(1));
}

TEST_CASE("build_sts: binders over finite parameter domains") {
  auto m = model_of(kOne);
  auto s = build_sts(dsl::parse_state_diagram("statechart K\ninitial S\nstate S\ntrans S -> S on g(v) [v != 1] / peer.g(v)"), m);
  std::vector<Value> literals;
  for (const auto& t : s.delta) {
    if (t.origin == TransitionOrigin::Diagram) literals.push_back(t.input->args.at(0).literal);
  }
  std::sort(literals.begin(), literals.end());
  CHECK(literals == std::vector<Value>{Value::integer(0), Value::integer(2)});
}

TEST_CASE("build_sts: errors") {
  auto m = model_of(kOne);
  CHECK(kind_of_error([&] { build_sts(dsl::parse_state_diagram("statechart K\ninitial S\nstate S\ntrans S -> S on h"), m); }) ==
        ErrorKind::UnknownSelector);
  CHECK(kind_of_error([&] { build_sts(dsl::parse_state_diagram("statechart K\ninitial S\nstate S\ntrans S -> S on f [x]"), m); }) ==
        ErrorKind::GuardType);
  CHECK(kind_of_error([&] {
          build_sts(dsl::parse_state_diagram("statechart K\ninitial S\nstate S\ntrans S -> S on f / nowhere.f()"), m);
        }) == ErrorKind::Resolve);
  CHECK(kind_of_error([&] { build_sts(dsl::parse_state_diagram("statechart Q\ninitial S\nstate S"), m); }) ==
        ErrorKind::UnknownClass);
  StsOptions tiny;
  tiny.budget = 1;
  CHECK(kind_of_error([&] {
          build_sts(dsl::parse_state_diagram("statechart K\ninitial S\nstate S\ntrans S -> S on g(v)"), m, tiny);
        }) == ErrorKind::HorizonTooLarge);
}

TEST_CASE("derive_blackbox: horizon 0, deterministic echo, nondeterministic branch") {
  auto m = model_of("class E { op a()\n op b() }\nassoc peer E[0..*] -- E[0..*]");
  auto echo = build_sts(dsl::parse_state_diagram(
                            "statechart E\ninitial P\nstate P\nstate Q\n"
                            "trans P -> Q on a / peer.a()\ntrans Q -> P on a / peer.b()\n"
                            "trans P -> P on b / peer.b()\ntrans Q -> Q on b / peer.a()"),
                        m);
  auto zero = derive_blackbox(echo, 0);
  CHECK(zero.relation.size() == 1);
  CHECK(zero.relation.at({}) == std::set<OutputStream>{{}});
  auto two = derive_blackbox(echo, 2);
  for (const auto& [in, outs] : two.relation) CHECK(outs.size() == 1);
  CHECK(two.relation.size() == 1 + 3 + 9);

  auto branch = build_sts(dsl::parse_state_diagram(
                              "statechart E\ninitial P\nstate P\nstate Q\n"
                              "trans P -> Q on a / peer.a()\ntrans P -> P on a / peer.b()"),
                          m);
  auto b = derive_blackbox(branch, 1);
  CHECK(b.relation.at({InputSymbol{"a", {}}}).size() == 2);
  CHECK_THROWS_AS(derive_blackbox(branch, 4, 5), Error);
}

TEST_CASE("guard and constraint expressions") {
  dsl::Expr e = dsl::Expr::binary("&&", dsl::Expr::binary(">", dsl::Expr::ref("x"), dsl::Expr::lit(Value::integer(1))),
                                  dsl::Expr::binary("==", dsl::Expr::ref("b"), dsl::Expr::lit(Value::boolean(true))));
  auto names = [](const std::string& n) -> Value { return n == "x" ? Value::integer(2) : Value::boolean(true); };
  CHECK(evaluate(e, names) == Value::boolean(true));
  CHECK(free_names(e) == std::set<std::string>{"b", "x"});
}

TEST_CASE("property: ignore mode is total on states x accepted messages") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    gen::Rng rng(seed);
    auto sys = gen::build(gen::random_system(rng));
    for (const auto& [cls, sts] : sys.stss) {
      for (std::size_t s = 0; s < sts.states.size(); ++s) {
        for (const auto& sym : sts.alphabet) CHECK_FALSE(sts.enabled(s, sym).empty());
      }
    }
  }
}

TEST_CASE("property: weakening a guard never removes concrete transitions") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    gen::Rng rng(seed);
    auto text = gen::random_system(rng);
    auto model = elaborate_static(dsl::parse_class_model(text.model));
    for (const auto& d : text.diagrams) {
      auto ast = dsl::parse_state_diagram(d);
      auto weak = ast;
      // g becomes g || !g: same free names, so the state space is unchanged.
      for (auto& t : weak.transitions) {
        if (!t.guard) continue;
        dsl::Expr neg;
        neg.kind = dsl::Expr::Kind::Not;
        neg.operands.push_back(*t.guard);
        t.guard = dsl::Expr::binary("||", *t.guard, neg);
      }
      auto strict_sts = build_sts(ast, model), weak_sts = build_sts(weak, model);
      using Sig = std::tuple<std::size_t, std::string, std::vector<ArgPattern>, std::vector<OutputAction>, std::size_t>;
      auto diagram_transitions = [](const StateTransitionSystem& s) {
        std::set<Sig> out;
        for (const auto& t : s.delta) {
          if (t.origin != TransitionOrigin::Diagram) continue;
          out.insert({t.source, t.input ? t.input->selector : "", t.input ? t.input->args : std::vector<ArgPattern>{},
                      t.outputs, t.destination});
        }
        return out;
      };
      REQUIRE(strict_sts.states == weak_sts.states);
      auto strict_set = diagram_transitions(strict_sts), weak_set = diagram_transitions(weak_sts);
      CHECK(std::includes(weak_set.begin(), weak_set.end(), strict_set.begin(), strict_set.end()));
    }
  }
}

TEST_CASE("property: black-box outputs are prefix consistent") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    gen::Rng rng(seed);
    gen::AutomatonShape shape;
    shape.default_loops = 1.0;  // no run blocks, so every prefix extends
    auto sts = gen::random_automaton(rng, shape);
    for (std::size_t h = 1; h <= 3; ++h) {
      auto longer = derive_blackbox(sts, h), shorter = derive_blackbox(sts, h - 1);
      CHECK(longer.restricted(h - 1) == shorter);
      for (const auto& [in, outs] : longer.relation) {
        if (in.size() != h) continue;
        std::set<OutputStream> cut;
        for (const auto& o : outs) cut.insert(truncate(o, h - 1));
        CHECK(cut == shorter.relation.at(InputStream(in.begin(), in.end() - 1)));
      }
    }
  }
}

TEST_CASE("property: flattening size law and reachability on small diagrams") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    gen::Rng rng(seed);
    auto ast = dsl::parse_state_diagram(gen::random_hierarchical_diagram(rng, {2, 3, 2, 5}));
    auto flat = flatten(ast);
    CHECK(flat.states.size() == oracle::flat_state_count(ast));
    CHECK(oracle::reachable_leaves(flat) == oracle::reachable_leaves(ast));
    CHECK(std::set<FlatLabel>(flat.states.begin(), flat.states.end()).size() == flat.states.size());
  }
}
