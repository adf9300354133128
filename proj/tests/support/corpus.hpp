#pragma once

#include <string>
#include <vector>

#include "umlsem/check/documents.hpp"

namespace corpus {

/// Path of a file under the bundled corpus directory.
std::string path(const std::string& relative);

std::string read(const std::string& file);

/// Parses the files (kind by extension) into a document set.
umlsem::check::DocumentSet load(const std::vector<std::string>& files);

/// Fresh scratch directory for one test.
std::string scratch_dir(const std::string& name);

}  // namespace corpus
