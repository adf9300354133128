#pragma once

#include <string>
#include <vector>

#include "umlsem/source.hpp"

namespace umlsem::check {

/// Error: the documents are inconsistent. Inconclusive: a bounded search ran
/// out of budget. Info: noted, no effect on the verdict.
enum class Severity { Error, Inconclusive, Info };

const char* to_string(Severity s);

struct Violation {
  std::string rule;
  Severity severity = Severity::Error;
  std::string subject;
  SourcePos pos;
  std::string message;

  auto operator<=>(const Violation&) const = default;
};

struct RuleInfo {
  const char* id;
  Severity severity;
  const char* summary;
};

const std::vector<RuleInfo>& rule_catalog();
/// Throws Error(Precondition) for ids outside the catalog.
const RuleInfo& rule(const std::string& id);
Violation make_violation(const std::string& rule_id, std::string subject, SourcePos pos, std::string message);

/// Stable order: by position, then rule, subject and message.
void sort_violations(std::vector<Violation>& v);

}  // namespace umlsem::check
