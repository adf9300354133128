#include <algorithm>

#include "doctest.h"
#include "json.hpp"
#include "support/corpus.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"
#include "umlsem/conform/conform.hpp"
#include "umlsem/dsl/parser.hpp"
#include "umlsem/elaborate/build_sts.hpp"
#include "umlsem/simulate/run.hpp"
#include "umlsem/simulate/trace.hpp"

using namespace umlsem;
using namespace umlsem::conform;

namespace {

std::string text(const std::string& rel) { return corpus::read(corpus::path(rel)); }

gen::SystemText phone_text() {
  return {text("phone/phone.uml"),
          {text("phone/caller.stm"), text("phone/exchange.stm"), text("phone/receiver.stm")},
          text("phone/phone.snap")};
}

dsl::SequenceDiagramAst seq(const std::string& rel) { return dsl::parse_sequence_diagram(text(rel)); }

ConformOptions at(std::size_t horizon, std::size_t budget = 100000) {
  ConformOptions o;
  o.horizon = horizon;
  o.budget = budget;
  return o;
}

// Two independent alternatives; neither produces z, so a diagram asking for
// x then y can only be refuted by exploring both.
gen::SystemText fork_text() {
  return {"class A { op done() }\nclass B { op x()\n op y() }\nassoc to A[0..*] -- B[0..*]",
          {"statechart A\ninitial S\nstate S\nstate L\nstate R\ntrans S -> L / to.x()\ntrans S -> R / to.y()",
           "statechart B\ninitial S\nstate S\ntrans S -> S on x\ntrans S -> S on y"},
          "obj a: A {}\nobj b: B {}\nlink to a -- b"};
}

}  // namespace

TEST_CASE("derive_automata: single interaction, phone caller, idle lifeline") {
  auto one = derive_automata(dsl::parse_sequence_diagram("seq s\nlifeline a: A\nlifeline b: B\nlifeline c: C\nmsg a -> b: m()"));
  CHECK(one.at("a").state_count() == 2);
  CHECK(one.at("a").transitions[0].direction == AbstractTransition::Direction::Output);
  CHECK(one.at("b").state_count() == 2);
  CHECK(one.at("b").transitions[0].direction == AbstractTransition::Direction::Input);
  CHECK(one.at("b").transitions[0].peer == "a");
  CHECK(one.at("c").state_count() == 1);
  CHECK(one.at("c").transitions.empty());

  auto phone = derive_automata(seq("phone/call.seq"));
  // caller: liftReceiver out, dialTone in, dialDigit out.
  CHECK(phone.at("caller").state_count() == 4);
  CHECK(phone.at("exch").state_count() == 6);
  CHECK(phone.at("recv").state_count() == 3);
}

TEST_CASE("property: derived automata are chains with one transition per touching interaction") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    gen::Rng rng(seed);
    std::size_t roles = rng.between(1, 4), n = rng.below(8);
    std::string src = "seq s\n";
    for (std::size_t r = 0; r < roles; ++r) src += "lifeline r" + std::to_string(r) + ": K\n";
    std::map<std::string, std::size_t> touching;
    for (std::size_t i = 0; i < n; ++i) {
      std::string a = "r" + std::to_string(rng.below(roles)), b = "r" + std::to_string(rng.below(roles));
      src += "msg " + a + " -> " + b + ": m()\n";
      ++touching[a];
      if (b != a) ++touching[b];
      else ++touching[a];
    }
    if (n == 0) continue;
    auto autos = derive_automata(dsl::parse_sequence_diagram(src));
    for (const auto& [role, a] : autos) {
      CHECK(a.state_count() == a.transitions.size() + 1);
      CHECK(a.transitions.size() == touching[role]);
      for (std::size_t i = 1; i < a.transitions.size(); ++i) CHECK(a.transitions[i - 1].interaction <= a.transitions[i].interaction);
    }
  }
}

TEST_CASE("map_abstract_transitions: missing selector, singleton, guarded family") {
  auto ast = dsl::parse_class_model(
      "class A {\n  attr x: int[0..1]\n  op back()\n}\nclass B {\n  op m()\n  op n()\n}\nassoc peer A[0..*] -- B[0..*]");
  auto model = elab::elaborate_static(ast);
  // Three diagram transitions; only one emits m.
  sim::StsMap stss;
  stss["A"] = elab::build_sts(dsl::parse_state_diagram("statechart A\ninitial S\nstate S\nstate T\nstate U\n"
                                                       "trans S -> T / peer.m()\ntrans T -> U / peer.n()\n"
                                                       "trans U -> U on back"),
                              model);
  stss["B"] = elab::build_sts(dsl::parse_state_diagram("statechart B\ninitial S\nstate S\ntrans S -> S on m / peer.back()"), model);
  auto autos = derive_automata(dsl::parse_sequence_diagram(
      "seq s\nlifeline a: A\nlifeline b: B\nmsg a -> b: m()\nmsg a -> b: zap()"));
  auto mapping = map_abstract_transitions(autos, stss, model);
  REQUIRE(mapping.concrete.at({"a", 0}).size() == 1);
  CHECK(stss["A"].delta[mapping.concrete.at({"a", 0})[0]].outputs[0].selector == "m");
  CHECK(mapping.concrete.at({"a", 1}).empty());
  REQUIRE(mapping.defects.size() == 2);  // zap is neither sent by a nor received by b
  CHECK(mapping.defects[0].message.find("no concrete transition") != std::string::npos);

  stss["A"] = elab::build_sts(
      dsl::parse_state_diagram("statechart A\ninitial S\nstate S\nstate T\ntrans S -> T [x >= 0] / peer.m()"), model);
  auto guarded = map_abstract_transitions(derive_automata(dsl::parse_sequence_diagram(
                                              "seq s\nlifeline a: A\nlifeline b: B\nmsg a -> b: m()")),
                                          stss, model);
  CHECK(guarded.concrete.at({"a", 0}).size() == 2);
  CHECK(guarded.defects.empty());

  auto ghost = autos;
  ghost.at("a").cls = "Ghost";
  CHECK_THROWS_AS(map_abstract_transitions(ghost, stss, model), Error);
}

TEST_CASE("check_exemplary: empty diagram, phone call, swapped mutant") {
  auto sys = gen::build(phone_text());
  auto w = sys.world(0);

  dsl::SequenceDiagramAst empty;
  empty.name = "empty";
  auto e = check_exemplary(empty, w, at(0));
  CHECK(e.verdict == Verdict::Conforms);
  REQUIRE(e.witness);
  CHECK(e.witness->events.empty());

  auto call = seq("phone/call.seq");
  auto ok = check_exemplary(call, w, at(2 * call.interactions.size()));
  CHECK(ok.verdict == Verdict::Conforms);
  REQUIRE(ok.witness);
  CHECK(ok.witness_horizon <= 2 * call.interactions.size());
  CHECK(ok.defects.empty());
  CHECK(oracle::replays(call, ok.binding, ok.witness->events));

  auto swapped = seq("phone/swapped.seq");
  auto bad = check_exemplary(swapped, w, at(10));
  CHECK(bad.verdict == Verdict::Fails);
  CHECK_FALSE(bad.witness);
  REQUIRE(bad.failing_interaction);
  // liftReceiver and ringTone can be matched; dialDigit would have to be sent after ringTone.
  CHECK(*bad.failing_interaction == 2);
  CHECK(bad.failing_pos.line == 8);
  auto per_lifeline = at(10);
  per_lifeline.ordering = Ordering::PerLifeline;
  CHECK(check_exemplary(swapped, w, per_lifeline).verdict == Verdict::Fails);

  auto j = nlohmann::json::parse(to_json(ok));
  CHECK(j["verdict"] == "conforms");
  CHECK(j["witness"].is_array());
  CHECK(nlohmann::json::parse(to_json(bad))["failing_interaction"]["index"] == 2);
}

TEST_CASE("check_exemplary: budget exhaustion is inconclusive, not a refutation") {
  auto sys = gen::build(fork_text());
  auto both = dsl::parse_sequence_diagram("seq s\nlifeline a: A\nlifeline b: B\nmsg a -> b: x()\nmsg a -> b: y()");
  auto small = check_exemplary(both, sys.world(0), at(4, 1));
  CHECK(small.verdict == Verdict::Inconclusive);
  CHECK(small.incomplete);
  CHECK(check_exemplary(both, sys.world(0), at(4)).verdict == Verdict::Fails);
  auto y = dsl::parse_sequence_diagram("seq s\nlifeline a: A\nlifeline b: B\nmsg a -> b: y()");
  CHECK(check_exemplary(y, sys.world(0), at(4)).verdict == Verdict::Conforms);
}

TEST_CASE("conformance is monotone in the bound and stable across seeds and threads") {
  auto call = seq("phone/call.seq");
  auto sys = gen::build(phone_text());
  auto base = check_exemplary(call, sys.world(0), at(10));
  REQUIRE(base.verdict == Verdict::Conforms);
  for (std::size_t h = base.witness_horizon; h <= base.witness_horizon + 6; ++h) {
    CHECK(check_exemplary(call, sys.world(0), at(h)).verdict == Verdict::Conforms);
  }
  CHECK(check_exemplary(call, sys.world(0), at(base.witness_horizon - 1)).verdict != Verdict::Conforms);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto o = at(10);
    o.threads = 1 + seed % 3;
    auto r = check_exemplary(call, sys.world(seed), o);
    CHECK(r.verdict == Verdict::Conforms);
    CHECK(r.witness_horizon == base.witness_horizon);
  }
}

TEST_CASE("abstract states may share concrete states") {
  // Every abstract state of the ponger's chain is the single concrete state Idle.
  auto sys = gen::build({text("pingpong/pingpong.uml"), {text("pingpong/pinger.stm"), text("pingpong/ponger.stm")},
                         text("pingpong/pingpong.snap")});
  auto rally = seq("pingpong/rally.seq");
  auto r = check_exemplary(rally, sys.world(0), at(6));
  CHECK(r.verdict == Verdict::Conforms);
  CHECK(r.automata.at("q").state_count() == 4);
  REQUIRE(r.witness);
  CHECK(oracle::replays(rally, r.binding, r.witness->events));
}

TEST_CASE("unrelated traffic never turns conformance into failure") {
  auto phone = phone_text();
  gen::SystemText both{phone.model + "\n" + text("pingpong/pingpong.uml"),
                       phone.diagrams,
                       phone.snapshot + "\nobj p: Pinger {}\nobj q: Ponger {}\nlink plays p -- q\n"};
  both.diagrams.push_back(text("pingpong/pinger.stm"));
  both.diagrams.push_back(text("pingpong/ponger.stm"));
  auto sys = gen::build(both);
  auto call = seq("phone/call.seq");
  auto r = check_exemplary(call, sys.world(0), at(10));
  CHECK(r.verdict == Verdict::Conforms);
  REQUIRE(r.witness);
  CHECK(oracle::replays(call, r.binding, r.witness->events));
}

TEST_CASE("property: observed traces conform and every witness replays") {
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    gen::Rng rng(seed);
    gen::SystemShape shape;
    shape.max_objects = 3;
    shape.max_states = 3;
    auto sys = gen::build(gen::random_system(rng, shape));
    auto w = sys.world(seed);
    auto exec = sim::run(w, 4);
    std::map<ObjectId, std::string> role;
    for (const auto& [name, id] : w.names) role[id] = name;
    std::string head = "seq observed\n";
    for (const auto& [name, id] : w.names) head += "lifeline " + name + ": " + id.cls + "\n";
    // The k-th send between a pair is consumed by the k-th delivery between it.
    std::map<std::pair<ObjectId, ObjectId>, std::size_t> sent, delivered;
    for (const auto& ev : exec.events) {
      if (ev.kind == sim::TraceEvent::Kind::Deliver) ++delivered[{ev.from, ev.to}];
    }
    std::vector<std::string> msgs;
    for (const auto& ev : exec.events) {
      if (ev.kind != sim::TraceEvent::Kind::Send) continue;
      if (sent[{ev.from, ev.to}]++ >= delivered[{ev.from, ev.to}]) continue;
      std::string m = "msg " + role.at(ev.from) + " -> " + role.at(ev.to) + ": " + ev.selector + "(";
      for (std::size_t i = 0; i < ev.args.size(); ++i) m += (i ? ", " : "") + ev.args[i].to_string();
      msgs.push_back(m + ")\n");
    }
    // Sends listed in global order may still contradict a lifeline's own
    // order of receipts and sends; keep the longest prefix the observed run
    // realizes according to the oracle.
    std::map<std::string, ObjectId> binding(w.names.begin(), w.names.end());
    std::optional<dsl::SequenceDiagramAst> s;
    std::string src;
    for (std::size_t k = std::min<std::size_t>(msgs.size(), 3); k > 0 && !s; --k) {
      src = head;
      for (std::size_t i = 0; i < k; ++i) src += msgs[i];
      auto candidate = dsl::parse_sequence_diagram(src);
      if (oracle::replays(candidate, binding, exec.events)) s = candidate;
    }
    if (!s) continue;
    auto r = check_exemplary(*s, w, at(4, 20000));
    if (r.verdict == Verdict::Inconclusive) continue;
    INFO("seed " << seed << "\n" << src << sim::to_jsonl(exec));
    CHECK(r.verdict == Verdict::Conforms);
    if (r.witness) CHECK(oracle::replays(*s, r.binding, r.witness->events));
    ++checked;
  }
  CHECK(checked >= 10);
}
