#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace umlsem::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kOk = 0, kSemanticFailure = 1, kUsage = 2, kInconclusive = 3 };

/// Document kind, from the file extension: .uml/.cls class model,
/// .stm state diagram, .seq sequence diagram, .snap snapshot.
enum class DocKind { ClassModel, StateDiagram, Sequence, Snapshot };

std::optional<DocKind> kind_of(const std::string& path);

/// UMLSEM_BUDGET if set and numeric, else 10^6.
std::size_t default_budget();

/// Entry point of the umlsem tool; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace umlsem::cli
