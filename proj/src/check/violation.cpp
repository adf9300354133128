#include "umlsem/check/violation.hpp"

#include <algorithm>
#include <tuple>

namespace umlsem::check {

const char* to_string(Severity s) {
  switch (s) {
    case Severity::Error: return "error";
    case Severity::Inconclusive: return "inconclusive";
    case Severity::Info: return "info";
  }
  return "?";
}

const std::vector<RuleInfo>& rule_catalog() {
  static const std::vector<RuleInfo> rules = {
      {"SIG-EXT", Severity::Error, "a subclass changes the type of an inherited attribute or operation"},
      {"INH-CYCLE", Severity::Error, "generalizations form a cycle"},
      {"ABS-INST", Severity::Error, "a snapshot object instantiates an abstract class"},
      {"COMP-MULT", Severity::Error, "the aggregate end of a composition allows more than one aggregate"},
      {"EVT-SEL", Severity::Error, "a state diagram event is not an operation of the owning class"},
      {"STD-OWNER", Severity::Error, "a state diagram names no class, or an undeclared one, or a class already described"},
      {"STD-SPONT", Severity::Info, "a transition has no triggering event and fires spontaneously"},
      {"ELAB", Severity::Error, "a state diagram cannot be compiled into a state transition system"},
      {"MULT", Severity::Error, "the number of linked objects lies outside the association end's multiplicity"},
      {"LINK-ASYM", Severity::Error, "an object lists a link partner that does not list it back"},
      {"COMP-SHARE", Severity::Error, "a part belongs to more than one aggregate of a composition"},
      {"LINK-TYPE", Severity::Error, "a linked object is not of the association end's class"},
      {"CONSTRAINT", Severity::Error, "a class constraint does not hold for an object"},
      {"INIT-EMPTY", Severity::Error, "a snapshot object has no admissible initial state"},
      {"SEQ-ROLE", Severity::Error, "a lifeline cannot be bound to an object with behavior"},
      {"SEQ-FAIL", Severity::Error, "no execution up to the horizon realizes the sequence diagram"},
      {"SEQ-INCONCLUSIVE", Severity::Inconclusive, "the search for a realizing execution ran out of budget"},
      {"SEQ-NOMATCH", Severity::Info, "an interaction matches no transition of its lifeline's class"},
      {"REFINE", Severity::Error, "a state diagram does not refine the diagram it is checked against"},
      {"REFINE-INCONCLUSIVE", Severity::Inconclusive, "the refinement check ran out of budget"},
  };
  return rules;
}

const RuleInfo& rule(const std::string& id) {
  for (const auto& r : rule_catalog()) {
    if (id == r.id) return r;
  }
  throw Error(ErrorKind::Precondition, "unknown rule id '" + id + "'");
}

Violation make_violation(const std::string& rule_id, std::string subject, SourcePos pos, std::string message) {
  return {rule_id, rule(rule_id).severity, std::move(subject), std::move(pos), std::move(message)};
}

void sort_violations(std::vector<Violation>& v) {
  std::sort(v.begin(), v.end(), [](const Violation& a, const Violation& b) {
    return std::tie(a.pos, a.rule, a.subject, a.message) < std::tie(b.pos, b.rule, b.subject, b.message);
  });
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace umlsem::check
