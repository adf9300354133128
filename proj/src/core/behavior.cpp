#include "umlsem/core/behavior.hpp"

namespace umlsem {

std::string to_string(const InputStream& in) {
  std::string out = "<";
  for (std::size_t i = 0; i < in.size(); ++i) {
    out += i ? " | " : "";
    out += in[i] ? in[i]->to_string() : "-";
  }
  return out + ">";
}

std::string to_string(const OutputStream& out) {
  std::string s = "<";
  for (std::size_t i = 0; i < out.size(); ++i) {
    s += i ? " | " : "";
    if (out[i].empty()) s += "-";
    for (std::size_t j = 0; j < out[i].size(); ++j) s += (j ? "; " : "") + out[i][j];
  }
  return s + ">";
}

Behavior Behavior::restricted(std::size_t h) const {
  Behavior out;
  out.horizon = h;
  for (const auto& [in, outs] : relation) {
    if (in.size() <= h) out.relation.emplace(in, outs);
  }
  return out;
}

OutputStream truncate(const OutputStream& out, std::size_t ticks) {
  if (out.size() <= ticks) return out;
  return OutputStream(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(ticks));
}

std::vector<InputStream> input_streams(const std::vector<InputSymbol>& alphabet, std::size_t horizon) {
  std::vector<InputTick> ticks{std::nullopt};
  for (const auto& s : alphabet) ticks.emplace_back(s);
  std::vector<InputStream> out{InputStream{}};
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= horizon; ++len) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (const auto& t : ticks) {
        InputStream next = out[i];
        next.push_back(t);
        out.push_back(std::move(next));
      }
    }
    level_begin = level_end;
  }
  return out;
}

}  // namespace umlsem
