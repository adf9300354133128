#include "umlsem/cli/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "umlsem/check/documents.hpp"
#include "umlsem/dsl/parser.hpp"
#include "umlsem/dsl/printer.hpp"
#include "umlsem/elaborate/build_sts.hpp"
#include "umlsem/simulate/trace.hpp"

namespace umlsem::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::vector<std::string> files;
  std::uint64_t seed = 0;
  std::size_t horizon = 10;
  std::size_t budget = 0;
  std::string policy = "concurrent";
  std::string unhandled;
  std::string format = "text";
  std::string out;
  unsigned threads = 1;
  std::string ordering = "global";
  bool per_tick = false;
  std::vector<std::string> refine;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Loaded {
  check::DocumentSet docs;
  std::vector<std::string> diagram_paths;
};

/// Parses every file; snapshots are resolved against the class model.
Loaded load(const std::vector<std::string>& files) {
  Loaded l;
  std::vector<std::pair<std::string, std::string>> snapshots;
  for (const auto& f : files) {
    auto kind = kind_of(f);
    if (!kind) throw UsageError("cannot tell the document kind of '" + f + "' (use .uml, .stm, .seq or .snap)");
    std::string text = read_file(f);
    switch (*kind) {
      case DocKind::ClassModel:
        if (l.docs.model) throw UsageError("more than one class model given");
        l.docs.model = dsl::parse_class_model(text, f);
        break;
      case DocKind::StateDiagram:
        l.docs.diagrams.push_back(dsl::parse_state_diagram(text, f));
        l.diagram_paths.push_back(f);
        break;
      case DocKind::Sequence: l.docs.sequences.push_back(dsl::parse_sequence_diagram(text, f)); break;
      case DocKind::Snapshot: snapshots.emplace_back(f, std::move(text)); break;
    }
  }
  for (const auto& [f, text] : snapshots) {
    l.docs.snapshots.push_back(dsl::parse_snapshot(text, f, l.docs.model ? &*l.docs.model : nullptr));
  }
  return l;
}

sim::Policy policy_of(const Config& c) {
  return c.policy == "sequential" ? sim::Policy::Sequential : sim::Policy::Concurrent;
}

std::optional<UnhandledPolicy> unhandled_of(const Config& c) {
  if (c.unhandled.empty()) return std::nullopt;
  return c.unhandled == "chaos" ? UnhandledPolicy::Chaos : UnhandledPolicy::Ignore;
}

check::CheckOptions check_options(const Config& c) {
  check::CheckOptions o;
  o.horizon = c.horizon;
  o.budget = c.budget;
  o.threads = c.threads;
  o.seed = c.seed;
  o.policy = policy_of(c);
  o.unhandled = unhandled_of(c);
  o.per_tick_constraints = c.per_tick;
  o.ordering = c.ordering == "per-lifeline" ? conform::Ordering::PerLifeline : conform::Ordering::Global;
  return o;
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << data;
  if (!out) throw IoError("cannot write '" + path + "'");
}

// ---------------------------------------------------------------------------

int cmd_parse(const Config& c, std::ostream& out) {
  auto l = load(c.files);
  if (c.format == "json") {
    ojson j{{"kind", "parse"}};
    ojson files = ojson::array();
    if (l.docs.model) {
      files.push_back({{"path", l.docs.model->document},
                       {"type", "class-model"},
                       {"classes", l.docs.model->classes.size()},
                       {"associations", l.docs.model->associations.size()}});
    }
    for (const auto& d : l.docs.diagrams) {
      files.push_back({{"path", d.document}, {"type", "state-diagram"}, {"owner", d.owner},
                       {"transitions", d.transitions.size()}});
    }
    for (const auto& s : l.docs.sequences) {
      files.push_back({{"path", s.document}, {"type", "sequence-diagram"}, {"lifelines", s.lifelines.size()},
                       {"interactions", s.interactions.size()}});
    }
    for (const auto& s : l.docs.snapshots) {
      files.push_back({{"path", s.document}, {"type", "snapshot"}, {"objects", s.objects.size()},
                       {"links", s.links.size()}});
    }
    j["files"] = files;
    out << j.dump(2) << "\n";
    return kOk;
  }
  auto banner = [&](const std::string& doc) { out << "// " << doc << "\n"; };
  if (l.docs.model) {
    banner(l.docs.model->document);
    out << dsl::print(*l.docs.model);
  }
  for (const auto& d : l.docs.diagrams) {
    banner(d.document);
    out << dsl::print(d);
  }
  for (const auto& s : l.docs.sequences) {
    banner(s.document);
    out << dsl::print(s);
  }
  for (const auto& s : l.docs.snapshots) {
    banner(s.document);
    out << dsl::print(s);
  }
  return kOk;
}

int cmd_check(const Config& c, std::ostream& out) {
  auto l = load(c.files);
  for (const auto& spec : c.refine) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw UsageError("--refine expects ABSTRACT.stm:CONCRETE.stm");
    auto index_of = [&](const std::string& path) {
      for (std::size_t i = 0; i < l.diagram_paths.size(); ++i) {
        if (l.diagram_paths[i] == path) return i;
      }
      throw UsageError("--refine names '" + path + "', which is not among the input files");
    };
    l.docs.refinements.push_back({index_of(spec.substr(0, colon)), index_of(spec.substr(colon + 1))});
  }
  auto report = check::check_documents(l.docs, check_options(c));
  out << (c.format == "json" ? check::to_json(report) : check::to_text(report));
  switch (report.verdict) {
    case check::DocumentReport::Verdict::Satisfiable: return kOk;
    case check::DocumentReport::Verdict::Violations: return kSemanticFailure;
    case check::DocumentReport::Verdict::Inconclusive: return kInconclusive;
  }
  return kSemanticFailure;
}

/// Model, one STS per described class, and the strict static elaboration.
struct System {
  elab::StaticModel model;
  sim::StsMap stss;
};

System elaborate_all(const check::DocumentSet& docs, const Config& c) {
  if (!docs.model) throw UsageError("a class model (.uml) is required");
  System s;
  s.model = elab::elaborate_static(*docs.model);
  elab::StsOptions o;
  o.unhandled = unhandled_of(c);
  o.budget = std::max(c.budget, elab::kDefaultBudget);
  for (const auto& d : docs.diagrams) {
    auto sts = elab::build_sts(d, s.model, o);
    if (!s.stss.emplace(d.owner, std::move(sts)).second) {
      throw Error(ErrorKind::Precondition, "class '" + d.owner + "' has more than one state diagram",
                  SourcePos{d.document, 1, 1});
    }
  }
  return s;
}

int cmd_simulate(const Config& c, std::ostream& out) {
  if (c.out.empty()) throw UsageError("simulate needs --out PATH for the trace");
  auto l = load(c.files);
  if (l.docs.snapshots.size() != 1) throw UsageError("simulate needs exactly one snapshot (.snap)");
  auto sys = elaborate_all(l.docs, c);
  auto world = sim::init_world(sys.model, l.docs.snapshots.front(), sys.stss, c.seed, policy_of(c));
  auto exec = sim::run(world, c.horizon);
  write_file(c.out, sim::to_jsonl(exec));
  std::size_t sent = 0;
  for (const auto& [id, s] : exec.outputs) sent += s.total();
  if (c.format == "json") {
    ojson j{{"kind", "simulation"},         {"seed", c.seed},     {"horizon", c.horizon},
            {"policy", c.policy},           {"ticks", exec.ticks}, {"termination", to_string(exec.termination)},
            {"messages", sent},             {"in_flight", exec.in_flight.size()}, {"trace", c.out}};
    out << j.dump(2) << "\n";
  } else {
    out << "simulated " << exec.ticks << " tick(s), " << to_string(exec.termination) << ", " << sent
        << " message(s) sent, " << exec.in_flight.size() << " in flight; trace written to " << c.out << "\n";
  }
  return kOk;
}

int cmd_conform(const Config& c, std::ostream& out) {
  auto l = load(c.files);
  if (l.docs.sequences.empty()) throw UsageError("conform needs at least one sequence diagram (.seq)");
  auto sys = elaborate_all(l.docs, c);
  auto options = check_options(c);
  conform::ConformOptions co;
  co.horizon = options.horizon;
  co.budget = options.budget;
  co.threads = options.threads;
  co.ordering = options.ordering;
  bool failed = false, inconclusive = false;
  ojson reports = ojson::array();
  for (const auto& seq : l.docs.sequences) {
    const dsl::SnapshotAst* snap = nullptr;
    std::size_t best = 0;
    for (const auto& s : l.docs.snapshots) {
      std::size_t hits = 0;
      for (const auto& ll : seq.lifelines) hits += s.find_object(ll.role) != nullptr;
      if (hits > best) {
        best = hits;
        snap = &s;
      }
    }
    dsl::SnapshotAst empty;
    auto world = sim::init_world(sys.model, snap ? *snap : empty, sys.stss, c.seed, policy_of(c));
    auto r = conform::check_exemplary(seq, world, co);
    failed |= r.verdict == conform::Verdict::Fails;
    inconclusive |= r.verdict == conform::Verdict::Inconclusive;
    if (c.format == "json") {
      reports.push_back(ojson::parse(conform::to_json(r)));
    } else {
      out << conform::to_text(r);
    }
  }
  if (c.format == "json") out << (reports.size() == 1 ? reports.front() : reports).dump(2) << "\n";
  return failed ? kSemanticFailure : inconclusive ? kInconclusive : kOk;
}

int cmd_refine(const Config& c, std::ostream& out) {
  auto l = load(c.files);
  if (l.docs.diagrams.size() != 2) throw UsageError("refine needs exactly two state diagrams: ABSTRACT.stm CONCRETE.stm");
  if (!l.docs.model) throw UsageError("a class model (.uml) is required");
  elab::StsOptions o;
  o.unhandled = unhandled_of(c);
  o.budget = std::max(c.budget, elab::kDefaultBudget);
  auto model = elab::elaborate_static(*l.docs.model);
  auto abstract = elab::build_sts(l.docs.diagrams[0], model, o);
  auto concrete = elab::build_sts(l.docs.diagrams[1], model, o);
  auto v = check::check_refinement(abstract, concrete, c.horizon, c.budget);
  if (c.format == "json") {
    ojson j{{"kind", "refinement"},
            {"abstract", l.diagram_paths[0]},
            {"concrete", l.diagram_paths[1]},
            {"status", check::to_string(v.status)},
            {"horizon", v.horizon},
            {"streams_checked", v.streams_checked}};
    if (v.counterexample) {
      j["counterexample"] = {{"input", umlsem::to_string(v.counterexample->input)},
                             {"output", umlsem::to_string(v.counterexample->output)}};
    } else {
      j["counterexample"] = nullptr;
    }
    out << j.dump(2) << "\n";
  } else {
    out << l.diagram_paths[1] << " refines " << l.diagram_paths[0] << ": " << check::to_string(v.status)
        << " (horizon " << v.horizon << ")\n";
    if (v.counterexample) {
      out << "  counterexample: input " << umlsem::to_string(v.counterexample->input) << " yields "
          << umlsem::to_string(v.counterexample->output) << "\n";
    }
    if (!v.note.empty()) out << "  " << v.note << "\n";
  }
  switch (v.status) {
    case check::RefinementVerdict::Status::Holds: return kOk;
    case check::RefinementVerdict::Status::Fails: return kSemanticFailure;
    case check::RefinementVerdict::Status::Inconclusive: return kInconclusive;
  }
  return kSemanticFailure;
}

std::string diagnostic(const Error& e) {
  std::string where = e.pos().valid() ? e.pos().to_string() + ": " : "";
  return where + "error: " + std::string(to_string(e.kind())) + ": " + e.detail();
}

}  // namespace

std::optional<DocKind> kind_of(const std::string& path) {
  auto ends = [&](const char* ext) {
    std::string e(ext);
    return path.size() > e.size() && path.compare(path.size() - e.size(), e.size(), e) == 0;
  };
  if (ends(".uml") || ends(".cls")) return DocKind::ClassModel;
  if (ends(".stm")) return DocKind::StateDiagram;
  if (ends(".seq")) return DocKind::Sequence;
  if (ends(".snap") || ends(".obj")) return DocKind::Snapshot;
  return std::nullopt;
}

std::size_t default_budget() {
  if (const char* env = std::getenv("UMLSEM_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && end != env) return static_cast<std::size_t>(v);
  }
  return 1'000'000;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"umlsem: executable semantics for a textual UML subset"};
  app.require_subcommand(1);
  Config c;
  c.budget = default_budget();

  auto common = [&](CLI::App* sub) {
    sub->add_option("files", c.files, "input documents (.uml, .stm, .seq, .snap)")->required();
    sub->add_option("--format", c.format, "report format")->check(CLI::IsMember({"json", "text"}));
  };
  auto behavior = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "seed for every random choice");
    sub->add_option("--horizon", c.horizon, "number of ticks");
    sub->add_option("--budget", c.budget, "exploration budget (runs or configurations)");
    sub->add_option("--policy", c.policy, "scheduling policy")->check(CLI::IsMember({"concurrent", "sequential"}));
    sub->add_option("--unhandled", c.unhandled, "treatment of unhandled events")
        ->check(CLI::IsMember({"ignore", "chaos"}));
    sub->add_option("--threads", c.threads, "worker threads for exhaustive search")->check(CLI::Range(1u, 256u));
  };

  auto* parse = app.add_subcommand("parse", "parse documents and print them in canonical form");
  common(parse);
  auto* chk = app.add_subcommand("check", "check all documents for consistency");
  common(chk);
  behavior(chk);
  chk->add_option("--refine", c.refine, "refinement query ABSTRACT.stm:CONCRETE.stm (repeatable)")
      ->allow_extra_args(false);
  chk->add_flag("--per-tick", c.per_tick, "check integrity rules after every tick, not only at quiescence");
  chk->add_option("--ordering", c.ordering, "cross-lifeline order")->check(CLI::IsMember({"global", "per-lifeline"}));
  auto* simulate = app.add_subcommand("simulate", "run the system from its snapshot and write a trace");
  common(simulate);
  behavior(simulate);
  simulate->add_option("--out", c.out, "trace file (line-delimited JSON)");
  auto* conform_cmd = app.add_subcommand("conform", "check sequence diagrams for exemplary conformance");
  common(conform_cmd);
  behavior(conform_cmd);
  conform_cmd->add_option("--ordering", c.ordering, "cross-lifeline order")
      ->check(CLI::IsMember({"global", "per-lifeline"}));
  auto* refine = app.add_subcommand("refine", "check that the second state diagram refines the first");
  common(refine);
  behavior(refine);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (parse->parsed()) return cmd_parse(c, out);
    if (chk->parsed()) return cmd_check(c, out);
    if (simulate->parsed()) return cmd_simulate(c, out);
    if (conform_cmd->parsed()) return cmd_conform(c, out);
    if (refine->parsed()) return cmd_refine(c, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << diagnostic(e) << "\n";
    return kSemanticFailure;
  }
  return kUsage;
}

}  // namespace umlsem::cli
