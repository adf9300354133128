#include "umlsem/simulate/trace.hpp"

#include <charconv>
#include "json.hpp"
#include <sstream>

namespace umlsem::sim {

namespace {

using ojson = nlohmann::ordered_json;

ojson value_json(const Value& v) {
  if (v.is_int()) return v.as_int();
  if (v.is_bool()) return v.as_bool();
  if (v.is_string()) return v.as_string();
  if (v.is_ref()) return ojson{{"ref", v.as_ref().to_string()}};
  return nullptr;
}

Value value_from(const ojson& j) {
  if (j.is_null()) return {};
  if (j.is_boolean()) return Value::boolean(j.get<bool>());
  if (j.is_number_integer()) return Value::integer(j.get<std::int64_t>());
  if (j.is_string()) return Value::string(j.get<std::string>());
  if (j.is_object() && j.contains("ref")) return Value::ref(parse_object_id(j.at("ref").get<std::string>()));
  throw Error(ErrorKind::Syntax, "unreadable value " + j.dump());
}

ojson label_json(const FlatLabel& l) {
  ojson out = ojson::array();
  for (const auto& s : l) out.push_back(s);
  return out;
}

ojson snapshot_json(const SystemState& s) {
  ojson objects = ojson::array();
  for (const auto& [id, os] : s.alive) {
    ojson attrs = ojson::object();
    for (const auto& [k, v] : os.attributes) attrs[k] = value_json(v);
    ojson links = ojson::array();
    for (const auto& [end, targets] : os.links) {
      ojson t = ojson::array();
      for (const auto& x : targets) t.push_back(x.to_string());
      links.push_back({{"association", end.association}, {"side", end.side}, {"targets", t}});
    }
    objects.push_back({{"id", id.to_string()},
                       {"class", id.cls},
                       {"control", label_json(os.control)},
                       {"active", os.active},
                       {"attributes", attrs},
                       {"links", links}});
  }
  return {{"v", kTraceVersion}, {"kind", "snapshot"}, {"tick", s.clock}, {"objects", objects}};
}

ojson event_json(const TraceEvent& e) {
  ojson args = ojson::array();
  for (const auto& a : e.args) args.push_back(value_json(a));
  ojson j{{"tick", e.tick}, {"kind", to_string(e.kind)}, {"from", e.from.to_string()}, {"to", e.to.to_string()}};
  if (e.kind == TraceEvent::Kind::Fire && e.selector.empty()) {
    j["selector"] = nullptr;
  } else {
    j["selector"] = e.selector;
  }
  j["args"] = args;
  if (e.call) j["call"] = true;
  if (e.kind == TraceEvent::Kind::Deliver && e.creation) j["creation"] = true;
  if (e.kind == TraceEvent::Kind::Fire) {
    j["source"] = label_json(e.source);
    j["destination"] = label_json(e.destination);
    j["origin"] = e.origin;
  }
  return j;
}

TraceEvent::Kind kind_from(const std::string& s) {
  if (s == "send") return TraceEvent::Kind::Send;
  if (s == "deliver") return TraceEvent::Kind::Deliver;
  if (s == "create") return TraceEvent::Kind::Create;
  if (s == "fire") return TraceEvent::Kind::Fire;
  throw Error(ErrorKind::Syntax, "unknown trace record kind '" + s + "'");
}

}  // namespace

std::string to_jsonl(const Execution& exec) {
  std::string out = snapshot_json(exec.initial).dump() + "\n";
  for (const auto& e : exec.events) out += event_json(e).dump() + "\n";
  return out;
}

ObjectId parse_object_id(const std::string& text) {
  auto hash = text.rfind('#');
  if (hash == std::string::npos || hash == 0) throw Error(ErrorKind::Syntax, "malformed object id '" + text + "'");
  ObjectId id;
  id.cls = text.substr(0, hash);
  const char* first = text.data() + hash + 1;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, id.index);
  if (ec != std::errc() || ptr != last || first == last) throw Error(ErrorKind::Syntax, "malformed object id '" + text + "'");
  return id;
}

TraceLog parse_trace(std::string_view jsonl) {
  TraceLog log;
  std::istringstream in{std::string(jsonl)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      auto j = ojson::parse(line);
      const std::string kind = j.at("kind").get<std::string>();
      if (kind == "snapshot") {
        log.version = j.at("v").get<int>();
        for (const auto& o : j.at("objects")) log.objects.push_back(parse_object_id(o.at("id").get<std::string>()));
        continue;
      }
      TraceEvent e;
      e.kind = kind_from(kind);
      e.tick = j.at("tick").get<std::uint64_t>();
      e.from = parse_object_id(j.at("from").get<std::string>());
      e.to = parse_object_id(j.at("to").get<std::string>());
      if (!j.at("selector").is_null()) e.selector = j.at("selector").get<std::string>();
      for (const auto& a : j.at("args")) e.args.push_back(value_from(a));
      e.call = j.value("call", false);
      e.creation = e.kind == TraceEvent::Kind::Create || j.value("creation", false);
      if (e.kind == TraceEvent::Kind::Fire) {
        e.source = j.at("source").get<std::vector<std::string>>();
        e.destination = j.at("destination").get<std::vector<std::string>>();
        e.origin = j.at("origin").get<std::string>();
      }
      log.events.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorKind::Syntax, "trace line " + std::to_string(lineno) + ": " + ex.what());
    }
  }
  if (log.version != kTraceVersion) throw Error(ErrorKind::Syntax, "missing or unsupported trace version");
  return log;
}

}  // namespace umlsem::sim
