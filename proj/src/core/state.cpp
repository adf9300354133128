#include "umlsem/core/state.hpp"

namespace umlsem {

std::string Message::to_string() const {
  std::string out = sender.to_string() + " -> " + receiver.to_string() + ": ";
  if (creation) out += "new ";
  if (call) out += "call ";
  return out + selector + "(" + join_values(args) + ")";
}

std::string label_to_string(const FlatLabel& label) {
  if (label.size() == 1) return label.front();
  std::string out = "(";
  for (std::size_t i = 0; i < label.size(); ++i) out += (i ? "," : "") + label[i];
  return out + ")";
}

std::size_t TimedStream::total() const {
  std::size_t n = 0;
  for (const auto& t : ticks) n += t.size();
  return n;
}

std::vector<Message> TimedStream::messages() const {
  std::vector<Message> out;
  out.reserve(total());
  for (const auto& t : ticks) out.insert(out.end(), t.begin(), t.end());
  return out;
}

}  // namespace umlsem
