#include "gen.hpp"

#include <functional>
#include <set>

#include "umlsem/dsl/parser.hpp"
#include "umlsem/elaborate/build_sts.hpp"

namespace gen {

using namespace umlsem;

namespace {

std::string cls(std::size_t i) { return "K" + std::to_string(i); }

std::string assoc(std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return "l" + std::to_string(i) + std::to_string(j);
}

std::string send(Rng& rng, std::size_t self, std::size_t classes, bool has_binder, bool creation) {
  std::size_t other = rng.below(classes);
  if (creation && rng.chance(0.1)) return "new " + cls(other) + "()";
  static const std::vector<std::string> selectors{"a", "b", "c"};
  const std::string& sel = rng.pick(selectors);
  std::string args;
  if (sel == "b") args = has_binder && rng.chance(0.5) ? "x" : std::to_string(rng.below(3));
  return assoc(self, other) + "." + sel + "(" + args + ")";
}

}  // namespace

SystemText random_system(Rng& rng, const SystemShape& shape) {
  SystemText out;
  std::size_t classes = rng.between(1, shape.max_classes);
  for (std::size_t i = 0; i < classes; ++i) {
    out.model += "class " + cls(i) + " {\n  attr mode: int[0..1]\n  op a()\n  op b(int[0..2])\n  op c()\n}\n";
  }
  for (std::size_t i = 0; i < classes; ++i) {
    for (std::size_t j = i; j < classes; ++j) {
      out.model += "assoc " + assoc(i, j) + " " + cls(i) + "[0..*] -- " + cls(j) + "[0..*]\n";
    }
  }

  for (std::size_t k = 0; k < classes; ++k) {
    std::size_t states = rng.between(1, shape.max_states);
    std::string d = "statechart " + cls(k) + "\ninitial S0\n";
    for (std::size_t s = 0; s < states; ++s) d += "state S" + std::to_string(s) + "\n";
    std::size_t transitions = rng.between(1, 2 * states);
    auto trans = [&](std::size_t from, bool spontaneous) {
      std::string t = "trans S" + std::to_string(from) + " -> S" + std::to_string(rng.below(states));
      bool binder = false;
      if (!spontaneous) {
        switch (rng.below(4)) {
          case 0: t += " on a"; break;
          case 1:
            t += " on b(x)";
            binder = true;
            break;
          case 2: t += " on b(" + std::to_string(rng.below(3)) + ")"; break;
          default: t += " on c()"; break;
        }
      }
      if (rng.chance(0.2)) t += binder && rng.chance(0.5) ? " [x > 0]" : " [mode == 1]";
      std::size_t sends = rng.chance(0.4) ? 0 : rng.chance(0.75) ? 1 : 2;
      for (std::size_t i = 0; i < sends; ++i) {
        t += (i ? ", " : " / ") + send(rng, k, classes, binder, shape.creation);
      }
      d += t + "\n";
    };
    for (std::size_t t = 0; t < transitions; ++t) trans(rng.below(states), rng.chance(0.25));
    if (shape.always_busy) {
      for (std::size_t s = 0; s < states; ++s) {
        d += "trans S" + std::to_string(s) + " -> S" + std::to_string(rng.below(states));
        if (rng.chance(0.5)) d += " / " + send(rng, k, classes, false, false);
        d += "\n";
      }
    }
    out.diagrams.push_back(std::move(d));
  }

  std::size_t objects = rng.between(1, shape.max_objects);
  std::vector<std::size_t> class_of;
  out.snapshot = "snapshot generated\n";
  for (std::size_t o = 0; o < objects; ++o) {
    class_of.push_back(rng.below(classes));
    out.snapshot += "obj o" + std::to_string(o) + ": " + cls(class_of.back()) + " {";
    if (rng.chance(0.5)) out.snapshot += " mode = " + std::to_string(rng.below(2)) + " ";
    out.snapshot += "}\n";
  }
  for (std::size_t p = 0; p < objects; ++p) {
    for (std::size_t q = p + 1; q < objects; ++q) {
      if (!rng.chance(0.5)) continue;
      // Written lower class first so the link reads like the association.
      std::size_t x = class_of[p] <= class_of[q] ? p : q, y = x == p ? q : p;
      out.snapshot += "link " + assoc(class_of[x], class_of[y]) + " o" + std::to_string(x) + " -- o" +
                      std::to_string(y) + "\n";
    }
  }
  return out;
}

System build(const SystemText& text) {
  System s;
  auto ast = dsl::parse_class_model(text.model, "generated.uml");
  s.model = std::make_shared<elab::StaticModel>(elab::elaborate_static(ast));
  for (const auto& d : text.diagrams) {
    auto sts = elab::build_sts(dsl::parse_state_diagram(d, "generated.stm"), *s.model);
    s.stss.emplace(sts.owner, std::move(sts));
  }
  s.snapshot = dsl::parse_snapshot(text.snapshot, "generated.snap", &ast);
  return s;
}

sim::World System::world(std::uint64_t seed, sim::Policy policy) const {
  return sim::init_world(*model, snapshot, stss, seed, policy);
}

// ---------------------------------------------------------------------------

std::string random_hierarchical_diagram(Rng& rng, const DiagramShape& shape) {
  std::size_t counter = 0;
  std::vector<std::string> names;
  std::string out;

  std::function<void(std::size_t, const std::string&)> state = [&](std::size_t depth, const std::string& indent) {
    std::string name = "N" + std::to_string(++counter);
    names.push_back(name);
    std::size_t kind = depth >= shape.max_depth ? 0 : rng.below(4);  // 0,1 simple; 2 or; 3 and
    if (kind < 2) {
      out += indent + "state " + name + "\n";
      return;
    }
    out += indent + "state " + name + " {\n";
    if (kind == 2) {
      std::size_t n = rng.between(1, shape.max_children);
      std::size_t init = rng.below(n);
      std::string body_indent = indent + "  ";
      std::string initial_line;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == init) initial_line = "N" + std::to_string(counter + 1);
        state(depth + 1, body_indent);
      }
      out += body_indent + "initial " + initial_line + "\n";
    } else {
      std::size_t regions = rng.between(2, shape.max_regions);
      for (std::size_t r = 0; r < regions; ++r) {
        std::string region = "R" + std::to_string(++counter);
        if (rng.chance(0.05)) {
          out += indent + "  region " + region + " {}\n";
          continue;
        }
        out += indent + "  region " + region + " {\n";
        std::size_t n = rng.between(1, shape.max_children);
        std::size_t init = rng.below(n);
        std::string initial_line;
        for (std::size_t i = 0; i < n; ++i) {
          if (i == init) initial_line = "N" + std::to_string(counter + 1);
          state(depth + 1, indent + "    ");
        }
        out += indent + "    initial " + initial_line + "\n";
        out += indent + "  }\n";
      }
    }
    out += indent + "}\n";
  };

  std::size_t top = rng.between(1, shape.max_children);
  std::size_t init = rng.below(top);
  std::string initial_line;
  for (std::size_t i = 0; i < top; ++i) {
    if (i == init) initial_line = "N" + std::to_string(counter + 1);
    state(0, "");
  }
  out += "initial " + initial_line + "\n";
  std::size_t transitions = rng.below(shape.max_transitions + 1);
  for (std::size_t t = 0; t < transitions; ++t) {
    out += "trans " + rng.pick(names) + " -> " + rng.pick(names) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------

StateTransitionSystem random_automaton(Rng& rng, const AutomatonShape& shape) {
  static const std::vector<std::string> selectors{"a", "b", "c"};
  static const std::vector<std::string> outputs{"x", "y"};
  StateTransitionSystem sts;
  sts.owner = "Gen";
  std::size_t states = rng.between(1, shape.max_states);
  for (std::size_t s = 0; s < states; ++s) sts.states.push_back({{"q" + std::to_string(s)}, {}});
  std::size_t inputs = rng.between(1, shape.max_inputs);
  for (std::size_t i = 0; i < inputs; ++i) sts.alphabet.push_back({selectors[i], {}});
  sts.initial.push_back(rng.below(states));
  if (states > 1 && rng.chance(0.3)) {
    std::size_t other = rng.below(states);
    if (other != sts.initial.front()) sts.initial.push_back(other);
  }

  std::size_t transitions = rng.below(shape.max_transitions + 1);
  for (std::size_t i = 0; i < transitions; ++i) {
    StsTransition t;
    t.source = rng.below(states);
    t.destination = rng.below(states);
    t.origin = TransitionOrigin::Diagram;
    if (!rng.chance(shape.spontaneous)) t.input = MessagePattern{selectors[rng.below(inputs)], {}, false};
    std::size_t n = rng.below(3);
    for (std::size_t k = 0; k < n; ++k) {
      t.outputs.push_back(OutputAction{{SendTarget::Kind::Link, "out"}, rng.pick(outputs), {}, false});
    }
    sts.delta.push_back(std::move(t));
  }
  for (std::size_t s = 0; s < states; ++s) {
    if (!rng.chance(shape.default_loops)) continue;
    for (std::size_t i = 0; i < inputs; ++i) {
      bool handled = false;
      for (const auto& t : sts.delta) {
        handled |= t.source == s && t.input && t.input->selector == selectors[i] && !t.fallback();
      }
      if (handled) continue;
      StsTransition t;
      t.source = t.destination = s;
      t.input = MessagePattern{selectors[i], {}, false};
      t.origin = TransitionOrigin::Default;
      sts.delta.push_back(std::move(t));
    }
  }
  sts.finalize();
  return sts;
}

}  // namespace gen
