#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "umlsem/core/sts.hpp"

namespace umlsem {

/// One tick of an object's input: nothing, or the single message consumed.
using InputTick = std::optional<InputSymbol>;
using InputStream = std::vector<InputTick>;
/// Rendered output actions per tick.
using OutputStream = std::vector<std::vector<std::string>>;

std::string to_string(const InputStream& in);
std::string to_string(const OutputStream& out);

/// Horizon-bounded black-box behavior: every input stream of length at
/// most `horizon` mapped to the set of output streams some run produces.
struct Behavior {
  std::size_t horizon = 0;
  std::map<InputStream, std::set<OutputStream>> relation;

  /// Behavior restricted to input streams of length <= h.
  Behavior restricted(std::size_t h) const;
  bool operator==(const Behavior&) const = default;
};

/// Output stream truncated to its first `ticks` ticks.
OutputStream truncate(const OutputStream& out, std::size_t ticks);

/// All input streams over the alphabet (plus the empty tick) of length <= horizon,
/// shortest first, then lexicographic.
std::vector<InputStream> input_streams(const std::vector<InputSymbol>& alphabet, std::size_t horizon);

}  // namespace umlsem
