#include "umlsem/conform/conform.hpp"

#include <functional>
#include <sstream>

#include "json.hpp"
#include "umlsem/simulate/trace.hpp"

namespace umlsem::conform {

const char* to_string(Ordering o) { return o == Ordering::Global ? "global" : "per-lifeline"; }

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Conforms: return "conforms";
    case Verdict::Fails: return "fails";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

/// Identifiers read back from a trace carry no provenance tag.
bool same_object(const ObjectId& a, const ObjectId& b) { return a.cls == b.cls && a.index == b.index; }

bool is_send(const sim::TraceEvent& e) {
  return e.kind == sim::TraceEvent::Kind::Send || e.kind == sim::TraceEvent::Kind::Create;
}

bool args_match(const std::vector<ArgPattern>& wanted, const std::vector<Value>& args) {
  if (wanted.empty()) return true;
  if (wanted.size() != args.size()) return false;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!wanted[i].matches(args[i])) return false;
  }
  return true;
}

class Matcher {
 public:
  Matcher(const dsl::SequenceDiagramAst& seq, const std::map<std::string, ObjectId>& binding,
          const std::vector<sim::TraceEvent>& events, Ordering ordering)
      : seq_(seq), binding_(binding), events_(events), ordering_(ordering) {
    // Pair every send with its delivery: per (sender, receiver) the k-th
    // delivery consumes the k-th send.
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    delivery_.assign(events.size(), none);
    std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> pending;
    std::map<std::pair<std::string, std::string>, std::size_t> consumed;
    for (std::size_t i = 0; i < events.size(); ++i) {
      const auto& e = events[i];
      auto key = std::make_pair(e.from.to_string(), e.to.to_string());
      if (is_send(e)) {
        pending[key].push_back(i);
      } else if (e.kind == sim::TraceEvent::Kind::Deliver) {
        auto& k = consumed[key];
        const auto& sends = pending[key];
        if (k < sends.size()) delivery_[sends[k++]] = i;
      }
    }
  }

  std::optional<Realization> run(std::size_t* matched) {
    for (const auto& x : seq_.interactions) {
      if (!binding_.count(x.sender) || !binding_.count(x.receiver)) {
        if (matched) *matched = 0;
        return std::nullopt;
      }
    }
    Realization r;
    std::map<std::string, long> last;
    bool ok = search(0, r, last, -1);
    if (matched) *matched = best_;
    if (!ok) return std::nullopt;
    return r;
  }

 private:
  bool search(std::size_t i, Realization& r, std::map<std::string, long>& last, long prev) {
    best_ = std::max(best_, i);
    if (i == seq_.interactions.size()) return true;
    const auto& x = seq_.interactions[i];
    const ObjectId& a = binding_.at(x.sender);
    const ObjectId& b = binding_.at(x.receiver);
    for (std::size_t e = 0; e < events_.size(); ++e) {
      const auto& ev = events_[e];
      if (!is_send(ev) || !same_object(ev.from, a) || !same_object(ev.to, b) || ev.selector != x.selector ||
          !args_match(x.args, ev.args))
        continue;
      if (delivery_[e] == static_cast<std::size_t>(-1)) continue;
      if (std::find(r.sends.begin(), r.sends.end(), e) != r.sends.end()) continue;
      if (ordering_ == Ordering::Global && prev >= 0 && !after(e, static_cast<std::size_t>(prev))) continue;
      long se = static_cast<long>(e);
      long de = static_cast<long>(delivery_[e]);
      auto la = last.count(x.sender) ? last[x.sender] : -1;
      auto lb = last.count(x.receiver) ? last[x.receiver] : -1;
      if (se <= la || de <= lb) continue;
      auto saved = last;
      last[x.sender] = se;
      last[x.receiver] = std::max(last[x.receiver], de);
      r.sends.push_back(e);
      r.deliveries.push_back(delivery_[e]);
      if (search(i + 1, r, last, se)) return true;
      r.sends.pop_back();
      r.deliveries.pop_back();
      last = std::move(saved);
    }
    return false;
  }

  /// Global send order: a later tick, or the same tick from another sender,
  /// or a later send of the same sender.
  bool after(std::size_t e, std::size_t prev) const {
    const auto& x = events_[e];
    const auto& p = events_[prev];
    if (x.tick != p.tick) return x.tick > p.tick;
    if (!same_object(x.from, p.from)) return true;
    return e > prev;
  }

  const dsl::SequenceDiagramAst& seq_;
  const std::map<std::string, ObjectId>& binding_;
  const std::vector<sim::TraceEvent>& events_;
  Ordering ordering_;
  std::vector<std::size_t> delivery_;
  std::size_t best_ = 0;
};

}  // namespace

std::vector<ProjectedEvent> project(const std::vector<sim::TraceEvent>& events, const ObjectId& id) {
  std::vector<ProjectedEvent> out;
  for (const auto& e : events) {
    if (e.kind == sim::TraceEvent::Kind::Deliver && same_object(e.to, id)) out.push_back({false, e});
    if (is_send(e) && same_object(e.from, id)) out.push_back({true, e});
  }
  return out;
}

std::vector<ProjectedEvent> project(const sim::Execution& exec, const ObjectId& id) { return project(exec.events, id); }

std::optional<Realization> realize(const dsl::SequenceDiagramAst& seq, const std::map<std::string, ObjectId>& binding,
                                   const std::vector<sim::TraceEvent>& events, Ordering ordering,
                                   std::size_t* matched) {
  return Matcher(seq, binding, events, ordering).run(matched);
}

ConformanceReport check_exemplary(const dsl::SequenceDiagramAst& seq, const sim::World& world,
                                  const ConformOptions& options) {
  ConformanceReport report;
  report.diagram = seq.name;
  report.horizon = options.horizon;
  report.budget = options.budget;
  report.ordering = options.ordering;

  sim::World w = world;
  for (const auto& l : seq.lifelines) {
    if (!w.model->has_class(l.cls)) {
      throw Error(ErrorKind::UnknownRoleClass, "lifeline '" + l.role + "' has unknown class '" + l.cls + "'", l.pos);
    }
    if (auto it = w.names.find(l.role); it != w.names.end()) {
      if (!w.model->is_subclass(it->second.cls, l.cls)) {
        throw Error(ErrorKind::UnknownRoleClass,
                    "object '" + l.role + "' is a " + it->second.cls + ", not a " + l.cls, l.pos);
      }
      report.binding[l.role] = it->second;
    } else {
      if (!w.stss->count(l.cls)) {
        throw Error(ErrorKind::UnknownRoleClass, "lifeline class '" + l.cls + "' has no state diagram", l.pos);
      }
      report.binding[l.role] = sim::add_object(w, l.cls, l.role);
    }
  }
  report.automata = derive_automata(seq);
  report.mapping = map_abstract_transitions(report.automata, *w.stss, *w.model);
  report.defects = report.mapping.defects;

  if (seq.interactions.empty()) {
    report.verdict = Verdict::Conforms;
    report.witness = sim::run(w, 0);
    report.realization = Realization{};
    report.runs = 1;
    return report;
  }

  std::size_t best = 0;
  std::optional<Realization> found;
  sim::EnumerateOptions eo;
  eo.horizon = options.horizon;
  eo.budget = options.budget;
  eo.threads = options.threads;
  eo.accept = [&](const sim::Execution& exec) {
    std::size_t matched = 0;
    found = realize(seq, report.binding, exec.events, options.ordering, &matched);
    best = std::max(best, matched);
    return found.has_value();
  };
  auto result = sim::enumerate_executions(w, eo);
  report.runs = result.runs;
  report.incomplete = result.incomplete;
  if (result.accepted) {
    report.verdict = Verdict::Conforms;
    report.witness = result.executions[*result.accepted];
    report.realization = found;
    std::uint64_t last = 0;
    for (std::size_t d : found->deliveries) last = std::max(last, report.witness->events[d].tick);
    report.witness_horizon = static_cast<std::size_t>(last - report.witness->initial.clock) + 1;
    return report;
  }
  report.verdict = result.incomplete ? Verdict::Inconclusive : Verdict::Fails;
  report.failing_interaction = best;
  if (best < seq.interactions.size()) {
    const auto& x = seq.interactions[best];
    report.failing_label = x.sender + " -> " + x.receiver + ": " + x.selector;
    report.failing_pos = x.pos;
  }
  return report;
}

namespace {

using ojson = nlohmann::ordered_json;

}  // namespace

std::string to_json(const ConformanceReport& r) {
  ojson j;
  j["kind"] = "conformance";
  j["diagram"] = r.diagram;
  j["verdict"] = to_string(r.verdict);
  j["horizon"] = r.horizon;
  j["budget"] = r.budget;
  j["runs"] = r.runs;
  j["incomplete"] = r.incomplete;
  j["ordering"] = to_string(r.ordering);
  ojson binding = ojson::object();
  for (const auto& [role, id] : r.binding) binding[role] = id.to_string();
  j["binding"] = binding;
  ojson autos = ojson::array();
  for (const auto& [role, a] : r.automata) {
    ojson ts = ojson::array();
    for (std::size_t i = 0; i < a.transitions.size(); ++i) {
      const auto& t = a.transitions[i];
      ojson concrete = ojson::array();
      if (auto it = r.mapping.concrete.find({role, i}); it != r.mapping.concrete.end()) {
        for (auto k : it->second) concrete.push_back(k);
      }
      ts.push_back({{"label", t.to_string()},
                    {"direction", t.direction == AbstractTransition::Direction::Input ? "in" : "out"},
                    {"interaction", t.interaction},
                    {"concrete", concrete}});
    }
    autos.push_back({{"role", role}, {"class", a.cls}, {"states", a.state_count()}, {"transitions", ts}});
  }
  j["automata"] = autos;
  if (r.failing_interaction) {
    j["failing_interaction"] = {
        {"index", *r.failing_interaction}, {"label", r.failing_label}, {"pos", r.failing_pos.to_string()}};
  } else {
    j["failing_interaction"] = nullptr;
  }
  ojson defects = ojson::array();
  for (const auto& d : r.defects) {
    defects.push_back({{"role", d.role}, {"transition", d.transition}, {"message", d.message}, {"pos", d.pos.to_string()}});
  }
  j["defects"] = defects;
  if (r.witness) {
    j["witness_horizon"] = r.witness_horizon;
    ojson records = ojson::array();
    std::istringstream in(sim::to_jsonl(*r.witness));
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty()) records.push_back(ojson::parse(line));
    }
    j["witness"] = records;
  } else {
    j["witness_horizon"] = nullptr;
    j["witness"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string to_text(const ConformanceReport& r) {
  std::ostringstream os;
  os << "sequence diagram " << (r.diagram.empty() ? "<unnamed>" : r.diagram) << ": " << to_string(r.verdict)
     << " (horizon " << r.horizon << ", " << r.runs << " run(s)" << (r.incomplete ? ", budget exhausted" : "")
     << ")\n";
  for (const auto& [role, id] : r.binding) os << "  " << role << " = " << id.to_string() << "\n";
  if (r.witness) os << "  witness needs " << r.witness_horizon << " tick(s)\n";
  if (r.failing_interaction) {
    os << "  " << r.failing_pos.to_string() << ": no explored execution realizes interaction "
       << *r.failing_interaction + 1 << " (" << r.failing_label << ") in order\n";
  }
  for (const auto& d : r.defects) os << "  " << d.pos.to_string() << ": " << d.message << "\n";
  return os.str();
}

}  // namespace umlsem::conform
