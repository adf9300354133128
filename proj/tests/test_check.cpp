#include <algorithm>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "support/corpus.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"
#include "umlsem/check/check_static.hpp"
#include "umlsem/check/documents.hpp"
#include "umlsem/check/refinement.hpp"
#include "umlsem/dsl/parser.hpp"
#include "umlsem/elaborate/blackbox.hpp"
#include "umlsem/elaborate/build_sts.hpp"

using namespace umlsem;
using namespace umlsem::check;

namespace {

std::string text(const std::string& rel) { return corpus::read(corpus::path(rel)); }

std::vector<std::string> rules(const std::vector<Violation>& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(x.rule);
  return out;
}

elab::StaticModel lenient(const std::string& src) { return elab::elaborate_static_lenient(dsl::parse_class_model(src)); }

const char* kFig3 =
    "class Branch {\n  attr stock: int\n  op restock(int)\n}\nclass CentralOffice {}\n"
    "assoc coordinates CentralOffice[1] -- Branch[0..*]\n";

StateTransitionSystem automaton(std::size_t states, std::vector<std::size_t> initial,
                                std::vector<std::tuple<std::size_t, std::string, std::string, std::size_t>> edges) {
  StateTransitionSystem s;
  s.owner = "Gen";
  for (std::size_t i = 0; i < states; ++i) s.states.push_back({{"q" + std::to_string(i)}, {}});
  s.initial = std::move(initial);
  s.alphabet = {{"a", {}}, {"b", {}}};
  for (const auto& [from, in, out, to] : edges) {
    StsTransition t;
    t.source = from;
    t.destination = to;
    t.input = MessagePattern{in, {}, false};
    if (!out.empty()) t.outputs.push_back(OutputAction{{SendTarget::Kind::Link, "out"}, out, {}, false});
    t.origin = TransitionOrigin::Diagram;
    s.delta.push_back(t);
  }
  s.finalize();
  return s;
}

}  // namespace

TEST_CASE("check_static: clean model, narrowed signature, foreign selector") {
  CHECK(check_static(lenient(kFig3)).empty());

  auto narrowed = lenient(text("warehouse/mutants/narrowing.uml"));
  CHECK(rules(check_static(narrowed)) == std::vector<std::string>{"SIG-EXT"});

  auto model = lenient(kFig3);
  auto diagram = dsl::parse_state_diagram("statechart Branch\ninitial S\nstate S\ntrans S -> S on restock(n)\n"
                                          "trans S -> S on audit", "branch.stm");
  auto v = check_static(model, {diagram});
  REQUIRE(v.size() == 1);
  CHECK(v[0].rule == "EVT-SEL");
  CHECK(v[0].pos.document == "branch.stm");
  CHECK(v[0].pos.line == 5);
}

TEST_CASE("check_state: multiplicity, symmetric link, composition sharing") {
  auto model = lenient(text("warehouse/warehouse.uml"));
  auto two = dsl::parse_snapshot(
      "obj c1: CentralOffice {}\nobj c2: CentralOffice {}\nobj b1: Branch { stock = 1 }\n"
      "link coordinates c1 -- b1\nlink coordinates c2 -- b1");
  auto s = snapshot_state(model, two);
  auto v = check_state(s.state, model, s.names);
  REQUIRE(rules(v) == std::vector<std::string>{"MULT"});
  CHECK(v[0].subject.find("b1") == 0);

  auto one = dsl::parse_snapshot("obj c1: CentralOffice {}\nobj b1: Branch { stock = 1 }\nlink coordinates c1 -- b1");
  auto s1 = snapshot_state(model, one);
  CHECK(check_state(s1.state, model, s1.names).empty());

  auto shared = dsl::parse_snapshot(text("warehouse/mutants/sharing.snap"));
  auto s2 = snapshot_state(model, shared);
  auto v2 = check_state(s2.state, model, s2.names);
  REQUIRE(rules(v2) == std::vector<std::string>{"COMP-SHARE"});
  CHECK(v2[0].subject.find("i1") != std::string::npos);

  auto negative = dsl::parse_snapshot("obj c1: CentralOffice {}\nobj b1: Branch { stock = -1 }\nlink coordinates c1 -- b1");
  auto s3 = snapshot_state(model, negative);
  CHECK(rules(check_state(s3.state, model, s3.names)) == std::vector<std::string>{"CONSTRAINT"});

  // Asymmetry can only arise in states built outside the snapshot language.
  auto lopsided = s1.state;
  lopsided.alive.at(s1.names.begin()->first).links.clear();
  auto asym = rules(check_state(lopsided, model));
  CHECK(std::find(asym.begin(), asym.end(), "LINK-ASYM") != asym.end());
}

TEST_CASE("check_refinement: reflexive, pruned branch, injected output") {
  // q0 -a/x-> q1, q0 -a/y-> q1, q1 -b/x-> q0
  auto abstract = automaton(2, {0}, {{0, "a", "x", 1}, {0, "a", "y", 1}, {1, "b", "x", 0}});
  for (std::size_t h = 0; h <= 4; ++h) CHECK(check_refinement(abstract, abstract, h).holds());

  auto pruned = automaton(2, {0}, {{0, "a", "x", 1}, {1, "b", "x", 0}});
  auto p = check_refinement(abstract, pruned, 4);
  CHECK(p.holds());
  CHECK_FALSE(p.counterexample);
  CHECK(p.horizon == 4);

  auto injected = automaton(2, {0}, {{0, "a", "x", 1}, {0, "a", "y", 1}, {1, "b", "x", 0}, {1, "b", "z", 0}});
  auto f = check_refinement(abstract, injected, 4);
  CHECK(f.status == RefinementVerdict::Status::Fails);
  REQUIRE(f.counterexample);
  // Shortest refutation: a then b.
  CHECK(f.counterexample->input.size() == 2);
  CHECK(elab::can_produce(injected, f.counterexample->input, f.counterexample->output));
  CHECK_FALSE(elab::can_produce(abstract, f.counterexample->input, f.counterexample->output));

  auto tight = check_refinement(abstract, injected, 4, 1);
  CHECK(tight.status == RefinementVerdict::Status::Inconclusive);
  CHECK_FALSE(tight.counterexample);
}

TEST_CASE("property: check_refinement agrees with the brute-force oracle") {
  std::size_t fails = 0, holds = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    gen::Rng rng(seed);
    auto a = gen::random_automaton(rng);
    auto c = rng.chance(0.5) ? gen::random_automaton(rng) : a;
    if (c.delta.size() > 0 && rng.chance(0.5)) {
      c.delta.erase(c.delta.begin() + static_cast<std::ptrdiff_t>(rng.below(c.delta.size())));
    }
    c.alphabet = a.alphabet;
    c.finalize();
    std::size_t h = rng.between(0, 4);
    auto v = check_refinement(a, c, h);
    INFO("seed " << seed << " horizon " << h);
    CHECK(v.holds() == oracle::refines(a, c, h));
    if (!v.holds()) {
      ++fails;
      REQUIRE(v.counterexample);
      CHECK(oracle::outputs_of(c, v.counterexample->input).count(v.counterexample->output));
      CHECK_FALSE(oracle::outputs_of(a, v.counterexample->input).count(v.counterexample->output));
    } else {
      ++holds;
    }
  }
  CHECK(fails > 20);
  CHECK(holds > 20);
}

TEST_CASE("property: refinement is transitive") {
  std::size_t triples = 0;
  for (std::uint64_t seed = 0; seed < 1500 && triples < 40; ++seed) {
    gen::Rng rng(seed);
    auto a = gen::random_automaton(rng);
    auto b = a, c = a;
    // Dropping transitions tends to keep refinement; the oracle decides.
    if (!b.delta.empty()) b.delta.erase(b.delta.begin() + static_cast<std::ptrdiff_t>(rng.below(b.delta.size())));
    b.finalize();
    c = b;
    if (!c.delta.empty()) c.delta.erase(c.delta.begin() + static_cast<std::ptrdiff_t>(rng.below(c.delta.size())));
    c.finalize();
    const std::size_t h = 3;
    if (!oracle::refines(a, b, h) || !oracle::refines(b, c, h)) continue;
    ++triples;
    CHECK(check_refinement(a, c, h).holds());
  }
  CHECK(triples >= 40);
}

TEST_CASE("property: ignore mode refines chaos mode on generated diagrams") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    gen::Rng rng(seed);
    gen::SystemShape shape;
    shape.max_states = 3;
    auto text = gen::random_system(rng, shape);
    auto model = elab::elaborate_static(dsl::parse_class_model(text.model));
    auto d = dsl::parse_state_diagram(text.diagrams.front());
    elab::StsOptions ignore, chaos;
    ignore.unhandled = UnhandledPolicy::Ignore;
    chaos.unhandled = UnhandledPolicy::Chaos;
    auto strict = elab::build_sts(d, model, ignore), loose = elab::build_sts(d, model, chaos);
    INFO("seed " << seed);
    CHECK(check_refinement(loose, strict, 2).holds());
  }
}

TEST_CASE("property: removing a link never adds an upper-bound violation") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    gen::Rng rng(seed);
    auto bound = [&] { return rng.chance(0.3) ? std::string("*") : std::to_string(rng.between(1, 2)); };
    std::string src = "class P {}\nclass Q {}\nassoc r P[0.." + bound() + "] -- Q[0.." + bound() + "]\n" +
                      "assoc s P[0.." + bound() + "] -- P[0.." + bound() + "]\n";
    auto model = lenient(src);
    auto ast = dsl::parse_class_model(src);
    std::string snap;
    for (int i = 0; i < 3; ++i) snap += "obj p" + std::to_string(i) + ": P {}\nobj q" + std::to_string(i) + ": Q {}\n";
    std::set<std::string> links;
    for (std::size_t k = rng.below(8); k > 0; --k) {
      std::string a = "p" + std::to_string(rng.below(3));
      if (rng.chance(0.5)) links.insert("link r " + a + " -- q" + std::to_string(rng.below(3)));
      else links.insert("link s " + a + " -- p" + std::to_string(rng.below(3)));
    }
    if (links.empty()) continue;
    auto mult = [&](const std::set<std::string>& ls) {
      std::string full = snap;
      for (const auto& l : ls) full += l + "\n";
      auto st = snapshot_state(model, dsl::parse_snapshot(full, "<gen>", &ast));
      std::set<std::string> out;
      for (const auto& v : check_state(st.state, model, st.names)) {
        if (v.rule == "MULT") out.insert(v.subject);
      }
      return out;
    };
    auto before = mult(links);
    auto fewer = links;
    fewer.erase(std::next(fewer.begin(), static_cast<std::ptrdiff_t>(rng.below(fewer.size()))));
    auto after = mult(fewer);
    INFO("seed " << seed);
    CHECK(std::includes(before.begin(), before.end(), after.begin(), after.end()));
  }
}

TEST_CASE("every reported violation points into its input text") {
  std::vector<std::vector<std::string>> sets = {
      {"warehouse/mutants/narrowing.uml", "warehouse/warehouse.snap"},
      {"warehouse/mutants/cycle.uml"},
      {"warehouse/warehouse.uml", "warehouse/mutants/abstract.snap"},
      {"warehouse/warehouse.uml", "warehouse/mutants/multiplicity.snap"},
      {"warehouse/warehouse.uml", "warehouse/mutants/asymmetric.snap"},
      {"warehouse/warehouse.uml", "warehouse/mutants/sharing.snap"},
      {"phone/phone.uml", "phone/caller.stm", "phone/exchange.stm", "phone/receiver.stm", "phone/phone.snap",
       "phone/swapped.seq"},
  };
  std::size_t seen = 0;
  for (const auto& rel : sets) {
    std::vector<std::string> files;
    for (const auto& r : rel) files.push_back(corpus::path(r));
    auto report = check_documents(corpus::load(files));
    for (const auto& v : report.violations) {
      INFO(v.rule << " " << v.subject);
      REQUIRE(v.pos.valid());
      auto body = corpus::read(v.pos.document);
      auto lines = static_cast<int>(std::count(body.begin(), body.end(), '\n')) + 1;
      CHECK(v.pos.line <= lines);
      CHECK(v.pos.column >= 1);
      ++seen;
    }
  }
  CHECK(seen >= 7);
}

TEST_CASE("check_documents: phone corpus, failing diagram, empty set, refinement query") {
  std::vector<std::string> phone;
  for (auto r : {"phone/phone.uml", "phone/caller.stm", "phone/exchange.stm", "phone/receiver.stm", "phone/phone.snap",
                 "phone/call.seq"})
    phone.push_back(corpus::path(r));
  auto ok = check_documents(corpus::load(phone));
  CHECK(ok.verdict == DocumentReport::Verdict::Satisfiable);
  REQUIRE(ok.conformance.size() == 1);
  CHECK(ok.conformance[0].verdict == conform::Verdict::Conforms);

  auto with_swapped = phone;
  with_swapped.push_back(corpus::path("phone/swapped.seq"));
  auto bad = check_documents(corpus::load(with_swapped));
  CHECK(bad.verdict == DocumentReport::Verdict::Violations);
  auto fail = std::find_if(bad.violations.begin(), bad.violations.end(), [](const Violation& v) { return v.rule == "SEQ-FAIL"; });
  REQUIRE(fail != bad.violations.end());
  CHECK(fail->pos.document.find("swapped.seq") != std::string::npos);
  CHECK(fail->pos.line == 8);

  auto empty = check_documents({});
  CHECK(empty.verdict == DocumentReport::Verdict::Satisfiable);
  CHECK(empty.violations.empty());

  auto docs = corpus::load(phone);
  docs.refinements.push_back({0, 0});
  auto refl = check_documents(docs);
  REQUIRE(refl.refinements.size() == 1);
  CHECK(refl.refinements[0].second.holds());

  auto j = nlohmann::json::parse(to_json(bad));
  CHECK(j["verdict"] == "violations");
  CHECK(j["violations"].is_array());
  CHECK(to_text(ok).find("satisfiable") != std::string::npos);
}

TEST_CASE("rule catalog: ids unique, lookups, stable sort") {
  std::set<std::string> ids;
  for (const auto& r : rule_catalog()) CHECK(ids.insert(r.id).second);
  CHECK(rule("MULT").severity == Severity::Error);
  CHECK(rule("SEQ-NOMATCH").severity == Severity::Info);
  CHECK_THROWS_AS(rule("NOPE"), Error);
  std::vector<Violation> v = {make_violation("MULT", "b", {"x", 3, 1}, "m"), make_violation("MULT", "a", {"x", 1, 1}, "m")};
  sort_violations(v);
  CHECK(v[0].subject == "a");
}
