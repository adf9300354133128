#include "umlsem/check/documents.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "json.hpp"
#include "umlsem/check/check_static.hpp"
#include "umlsem/elaborate/build_sts.hpp"

namespace umlsem::check {

const char* to_string(DocumentReport::Verdict v) {
  switch (v) {
    case DocumentReport::Verdict::Satisfiable: return "satisfiable";
    case DocumentReport::Verdict::Violations: return "violations";
    case DocumentReport::Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

SourcePos head_of(const std::string& document) { return SourcePos{document, 1, 1}; }

std::string stream_text(const InputStream& in, const OutputStream& out) {
  return "input " + umlsem::to_string(in) + " yields " + umlsem::to_string(out);
}

/// Snapshot whose objects cover the most lifeline roles; ties go to the
/// earlier snapshot.
const dsl::SnapshotAst* snapshot_for(const dsl::SequenceDiagramAst& seq, const std::vector<dsl::SnapshotAst>& snaps) {
  const dsl::SnapshotAst* best = nullptr;
  std::size_t best_hits = 0;
  for (const auto& s : snaps) {
    std::size_t hits = 0;
    for (const auto& l : seq.lifelines) hits += s.find_object(l.role) != nullptr;
    if (hits > best_hits) {
      best = &s;
      best_hits = hits;
    }
  }
  return best;
}

class Checker {
 public:
  Checker(const DocumentSet& docs, const CheckOptions& options) : docs_(docs), options_(options) {}

  DocumentReport run() {
    report_.horizon = options_.horizon;
    if (!docs_.model) {
      if (!docs_.diagrams.empty() || !docs_.snapshots.empty() || !docs_.sequences.empty()) {
        throw Error(ErrorKind::Precondition, "state diagrams, snapshots and sequence diagrams need a class model");
      }
      return finish();
    }
    model_ = elab::elaborate_static_lenient(*docs_.model);
    add(check_static(model_, docs_.diagrams, docs_.snapshots));
    // With cyclic inheritance the subclass relation is meaningless, so
    // nothing that depends on it (link typing, behavior) is evaluated.
    for (const auto& issue : model_.issues) {
      if (issue.kind == elab::StaticIssue::Kind::CyclicInheritance) return finish();
    }
    build_stss();
    for (const auto& s : docs_.snapshots) check_snapshot(s);
    for (const auto& seq : docs_.sequences) check_sequence(seq);
    for (const auto& q : docs_.refinements) check_refinement_query(q);
    return finish();
  }

 private:
  void add(std::vector<Violation> v) { report_.violations.insert(report_.violations.end(), v.begin(), v.end()); }

  void add(const std::string& rule_id, std::string subject, SourcePos pos, std::string message) {
    report_.violations.push_back(make_violation(rule_id, std::move(subject), std::move(pos), std::move(message)));
  }

  elab::StsOptions sts_options() const {
    elab::StsOptions o;
    o.unhandled = options_.unhandled;
    // A small exploration budget must not make elaboration itself fail.
    o.budget = std::max(options_.budget, elab::kDefaultBudget);
    return o;
  }

  void build_stss() {
    sts_of_diagram_.assign(docs_.diagrams.size(), std::nullopt);
    for (std::size_t i = 0; i < docs_.diagrams.size(); ++i) {
      const auto& d = docs_.diagrams[i];
      if (d.owner.empty() || !model_.has_class(d.owner)) continue;
      try {
        auto sts = elab::build_sts(d, model_, sts_options());
        sts_of_diagram_[i] = sts;
        stss_.emplace(d.owner, std::move(sts));
      } catch (const Error& e) {
        // Unknown selectors are already reported by EVT-SEL.
        if (e.kind() == ErrorKind::UnknownSelector) continue;
        add("ELAB", d.owner, e.pos().valid() ? e.pos() : head_of(d.document), e.detail());
      }
    }
  }

  bool has_behavior(const dsl::SnapshotAst& s) const {
    for (const auto& o : s.objects) {
      if (!stss_.count(o.cls) || model_.is_abstract(o.cls)) return false;
    }
    return true;
  }

  void check_snapshot(const dsl::SnapshotAst& s) {
    SnapshotState st;
    try {
      st = snapshot_state(model_, s);
    } catch (const Error& e) {
      add("LINK-TYPE", s.name, e.pos(), e.detail());
      return;
    }
    add(check_state(st.state, model_, st.names));
    if (s.objects.empty() || !has_behavior(s)) return;
    sim::World w;
    try {
      w = sim::init_world(model_, s, stss_, options_.seed, options_.policy);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::InitialStateEmpty) add("INIT-EMPTY", s.name, e.pos(), e.detail());
      return;
    }
    // Integrity rules on the states the snapshot evolves into.
    auto exec = sim::run(w, options_.horizon);
    std::map<ObjectId, std::string> names;
    for (const auto& [n, id] : w.names) names[id] = n;
    auto check_at = [&](const SystemState& state) {
      auto found = check_state(state, model_, names);
      for (auto& v : found) v.message += " (tick " + std::to_string(state.clock) + ")";
      add(std::move(found));
    };
    if (options_.per_tick_constraints) {
      for (std::size_t t = 1; t < exec.trajectory.size(); ++t) check_at(exec.trajectory[t]);
    } else if (exec.termination == sim::Termination::Quiescent && exec.trajectory.size() > 1) {
      check_at(exec.trajectory.back());
    }
  }

  void check_sequence(const dsl::SequenceDiagramAst& seq) {
    dsl::SnapshotAst empty;
    const dsl::SnapshotAst* snap = snapshot_for(seq, docs_.snapshots);
    SourcePos head = seq.lifelines.empty() ? head_of(seq.document) : seq.lifelines.front().pos;
    try {
      auto w = sim::init_world(model_, snap ? *snap : empty, stss_,
                               options_.seed, options_.policy);
      conform::ConformOptions co;
      co.horizon = options_.horizon;
      co.budget = options_.budget;
      co.threads = options_.threads;
      co.ordering = options_.ordering;
      auto r = conform::check_exemplary(seq, w, co);
      for (const auto& d : r.defects) add("SEQ-NOMATCH", d.role, d.pos, d.message);
      if (r.verdict == conform::Verdict::Fails) {
        add("SEQ-FAIL", seq.name.empty() ? seq.document : seq.name, r.failing_pos.valid() ? r.failing_pos : head,
            "no execution up to horizon " + std::to_string(options_.horizon) + " realizes interaction " +
                std::to_string(*r.failing_interaction + 1) + " (" + r.failing_label + ") in order");
      } else if (r.verdict == conform::Verdict::Inconclusive) {
        add("SEQ-INCONCLUSIVE", seq.name.empty() ? seq.document : seq.name, head,
            "budget of " + std::to_string(options_.budget) + " runs exhausted without a witness");
      }
      report_.conformance.push_back(std::move(r));
    } catch (const Error& e) {
      std::string rule_id = e.kind() == ErrorKind::InitialStateEmpty ? "INIT-EMPTY" : "SEQ-ROLE";
      add(rule_id, seq.name.empty() ? seq.document : seq.name, e.pos().valid() ? e.pos() : head, e.detail());
    }
  }

  void check_refinement_query(const RefinementQuery& q) {
    if (q.abstract >= docs_.diagrams.size() || q.concrete >= docs_.diagrams.size()) {
      throw Error(ErrorKind::Precondition, "refinement query names a missing diagram");
    }
    const auto& concrete_doc = docs_.diagrams[q.concrete];
    if (!sts_of_diagram_[q.abstract] || !sts_of_diagram_[q.concrete]) {
      add("REFINE", concrete_doc.document, head_of(concrete_doc.document),
          "refinement not checked: a diagram could not be compiled");
      return;
    }
    auto v = check_refinement(*sts_of_diagram_[q.abstract], *sts_of_diagram_[q.concrete], options_.horizon,
                              options_.budget);
    const std::string subject = docs_.diagrams[q.abstract].document + " <- " + concrete_doc.document;
    if (v.status == RefinementVerdict::Status::Fails) {
      add("REFINE", subject, head_of(concrete_doc.document),
          "not a refinement at horizon " + std::to_string(v.horizon) + ": " +
              stream_text(v.counterexample->input, v.counterexample->output));
    } else if (v.status == RefinementVerdict::Status::Inconclusive) {
      add("REFINE-INCONCLUSIVE", subject, head_of(concrete_doc.document), v.note);
    }
    report_.refinements.emplace_back(q, std::move(v));
  }

  DocumentReport finish() {
    sort_violations(report_.violations);
    bool error = false, inconclusive = false;
    for (const auto& v : report_.violations) {
      error |= v.severity == Severity::Error;
      inconclusive |= v.severity == Severity::Inconclusive;
    }
    report_.verdict = error          ? DocumentReport::Verdict::Violations
                      : inconclusive ? DocumentReport::Verdict::Inconclusive
                                     : DocumentReport::Verdict::Satisfiable;
    return std::move(report_);
  }

  const DocumentSet& docs_;
  const CheckOptions& options_;
  elab::StaticModel model_;
  sim::StsMap stss_;
  std::vector<std::optional<StateTransitionSystem>> sts_of_diagram_;
  DocumentReport report_;
};

}  // namespace

DocumentReport check_documents(const DocumentSet& docs, const CheckOptions& options) {
  return Checker(docs, options).run();
}

std::string to_json(const DocumentReport& r) {
  using ojson = nlohmann::ordered_json;
  ojson j;
  j["kind"] = "check";
  j["verdict"] = to_string(r.verdict);
  j["horizon"] = r.horizon;
  ojson vs = ojson::array();
  for (const auto& v : r.violations) {
    vs.push_back({{"rule", v.rule},
                  {"severity", to_string(v.severity)},
                  {"subject", v.subject},
                  {"pos", v.pos.to_string()},
                  {"message", v.message}});
  }
  j["violations"] = vs;
  ojson cs = ojson::array();
  for (const auto& c : r.conformance) cs.push_back(ojson::parse(conform::to_json(c)));
  j["conformance"] = cs;
  ojson rs = ojson::array();
  for (const auto& [q, v] : r.refinements) {
    ojson e{{"abstract", q.abstract}, {"concrete", q.concrete}, {"status", to_string(v.status)}, {"horizon", v.horizon}};
    if (v.counterexample) {
      e["counterexample"] = {{"input", umlsem::to_string(v.counterexample->input)},
                             {"output", umlsem::to_string(v.counterexample->output)}};
    } else {
      e["counterexample"] = nullptr;
    }
    rs.push_back(e);
  }
  j["refinements"] = rs;
  return j.dump(2) + "\n";
}

std::string to_text(const DocumentReport& r) {
  std::ostringstream os;
  for (const auto& v : r.violations) {
    os << v.pos.to_string() << ": " << to_string(v.severity) << " [" << v.rule << "] " << v.message << "\n";
  }
  for (const auto& c : r.conformance) os << conform::to_text(c);
  for (const auto& [q, v] : r.refinements) {
    os << "diagram #" << q.concrete << " refines diagram #" << q.abstract << ": " << to_string(v.status) << " at horizon "
       << v.horizon << "\n";
  }
  os << "verdict: " << to_string(r.verdict) << " (bounded by horizon " << r.horizon << ")\n";
  return os.str();
}

}  // namespace umlsem::check
