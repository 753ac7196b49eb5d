#include "tempoweave/trace.hpp"

#include "tempoweave/error.hpp"

#include <json.hpp>

#include <algorithm>

namespace tempoweave {

using nlohmann::ordered_json;

namespace {

ordered_json verdicts_json(const std::vector<std::optional<Verdict>>& verdicts) {
  ordered_json out = ordered_json::array();
  for (const auto& v : verdicts)
    out.push_back(v ? ordered_json(std::string(to_string(*v))) : ordered_json(nullptr));
  return out;
}

// Tiny schema description: each field has a name and a checker.
struct Field {
  const char* name;
  bool (*check)(const ordered_json&);
};

bool is_string(const ordered_json& j) { return j.is_string(); }
bool is_bool(const ordered_json& j) { return j.is_boolean(); }
bool is_id(const ordered_json& j) { return j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0); }
bool is_time(const ordered_json& j) {
  if (!j.is_string())
    return false;
  try {
    Time::parse(j.get<std::string>());
    return true;
  } catch (const ParseError&) {
    return false;
  }
}
bool is_string_array(const ordered_json& j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), [](const ordered_json& e) { return e.is_string(); });
}
bool is_verdict(const ordered_json& j) {
  return j.is_null() || (j.is_string() && verdict_from_string(j.get<std::string>()).has_value());
}

void check_object(const ordered_json& j, std::initializer_list<Field> fields, const std::string& where,
                  std::vector<std::string>& problems) {
  if (!j.is_object()) {
    problems.push_back(where + ": expected an object");
    return;
  }
  for (const auto& f : fields) {
    auto it = j.find(f.name);
    if (it == j.end())
      problems.push_back(where + ": missing field '" + f.name + "'");
    else if (!f.check(*it))
      problems.push_back(where + ": field '" + f.name + "' has the wrong type");
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    const bool known = std::any_of(fields.begin(), fields.end(), [&](const Field& f) { return it.key() == f.name; });
    if (!known)
      problems.push_back(where + ": unexpected field '" + it.key() + "'");
  }
}

template <typename Each>
void check_array(const ordered_json& j, const std::string& where, std::vector<std::string>& problems,
                 const Each& each) {
  if (!j.is_array()) {
    problems.push_back(where + ": expected an array");
    return;
  }
  for (std::size_t i = 0; i < j.size(); ++i)
    each(j[i], where + "[" + std::to_string(i) + "]");
}

bool any(const ordered_json&) { return true; }

std::vector<std::string> validate_json(const ordered_json& j) {
  std::vector<std::string> problems;
  check_object(j,
               {{"v", any},
                {"seq", is_id},
                {"clock", is_time},
                {"agents", any},
                {"elapsed", any},
                {"in_transit", any},
                {"verdicts", any}},
               "record", problems);
  if (!problems.empty())
    return problems;
  if (!(j["v"].is_number_integer() && j["v"].get<int>() == kTraceVersion))
    problems.push_back("record: unsupported version");
  check_array(j["agents"], "agents", problems, [&](const ordered_json& a, const std::string& where) {
    check_object(a,
                 {{"name", is_string},
                  {"task", is_string},
                  {"active", is_bool},
                  {"inputs", is_string_array},
                  {"messages", any}},
                 where, problems);
    if (a.is_object() && a.contains("messages"))
      check_array(a["messages"], where + ".messages", problems, [&](const ordered_json& m, const std::string& w) {
        check_object(m, {{"id", is_id}, {"kind", is_string}, {"sender", is_string}}, w, problems);
      });
  });
  check_array(j["elapsed"], "elapsed", problems, [&](const ordered_json& e, const std::string& where) {
    check_object(e, {{"agent", is_string}, {"transition", is_string}, {"value", is_time}}, where, problems);
  });
  check_array(j["in_transit"], "in_transit", problems, [&](const ordered_json& m, const std::string& where) {
    check_object(m, {{"id", is_id}, {"kind", is_string}, {"sender", is_string}, {"recipient", is_string}}, where,
                 problems);
  });
  check_array(j["verdicts"], "verdicts", problems, [&](const ordered_json& v, const std::string& where) {
    if (!is_verdict(v))
      problems.push_back(where + ": expected \"T\", \"Tc\", \"Fc\", \"F\" or null");
  });
  return problems;
}

ordered_json parse_json(std::string_view line) {
  try {
    return ordered_json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed trace line: ") + e.what());
  }
}

} // namespace

TraceRecord to_record(const StepOutcome& outcome) {
  TraceRecord r{outcome.snapshot, outcome.verdicts};
  for (const auto& name : outcome.active)
    r.snapshot.agent(name).active = true;
  return r;
}

std::string serialize(const TraceRecord& r) {
  const Snapshot& s = r.snapshot;
  ordered_json j;
  j["v"] = kTraceVersion;
  j["seq"] = s.seq;
  j["clock"] = s.clock.to_string();
  j["agents"] = ordered_json::array();
  for (const auto& a : s.agents) {
    ordered_json messages = ordered_json::array();
    for (const auto& m : a.messages)
      messages.push_back({{"id", m.id}, {"kind", m.kind}, {"sender", m.sender}});
    j["agents"].push_back({{"name", a.name},
                           {"task", a.task},
                           {"active", a.active},
                           {"inputs", std::vector<std::string>(a.inputs.begin(), a.inputs.end())},
                           {"messages", std::move(messages)}});
  }
  j["elapsed"] = ordered_json::array();
  for (const auto& e : s.elapsed)
    j["elapsed"].push_back({{"agent", e.agent}, {"transition", e.transition}, {"value", e.value.to_string()}});
  j["in_transit"] = ordered_json::array();
  for (const auto& m : s.in_transit)
    j["in_transit"].push_back({{"id", m.id}, {"kind", m.kind}, {"sender", m.sender}, {"recipient", m.recipient}});
  j["verdicts"] = verdicts_json(r.verdicts);
  return j.dump();
}

std::vector<std::string> validate_record(std::string_view line) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    return {std::string("not JSON: ") + e.what()};
  }
  return validate_json(j);
}

TraceRecord parse_record(std::string_view line) {
  const ordered_json j = parse_json(line);
  if (auto problems = validate_json(j); !problems.empty())
    throw ParseError("invalid trace record: " + problems.front());
  TraceRecord r;
  Snapshot& s = r.snapshot;
  s.seq = j["seq"].get<std::uint64_t>();
  s.clock = Time::parse(j["clock"].get<std::string>());
  std::uint64_t max_id = 0;
  for (const auto& a : j["agents"]) {
    AgentState st;
    st.name = a["name"].get<std::string>();
    st.task = a["task"].get<std::string>();
    st.active = a["active"].get<bool>();
    for (const auto& i : a["inputs"])
      st.inputs.insert(i.get<std::string>());
    for (const auto& m : a["messages"]) {
      st.messages.push_back({m["id"].get<std::uint64_t>(), m["kind"].get<std::string>(),
                             m["sender"].get<std::string>(), st.name});
      max_id = std::max(max_id, st.messages.back().id);
    }
    s.agents.push_back(std::move(st));
  }
  for (const auto& e : j["elapsed"])
    s.elapsed.push_back({e["agent"].get<std::string>(), e["transition"].get<std::string>(),
                         Time::parse(e["value"].get<std::string>())});
  for (const auto& m : j["in_transit"]) {
    s.in_transit.push_back({m["id"].get<std::uint64_t>(), m["kind"].get<std::string>(),
                            m["sender"].get<std::string>(), m["recipient"].get<std::string>()});
    max_id = std::max(max_id, s.in_transit.back().id);
  }
  s.next_message_id = max_id + 1;
  for (const auto& v : j["verdicts"])
    r.verdicts.push_back(v.is_null() ? std::nullopt : verdict_from_string(v.get<std::string>()));
  if (!std::is_sorted(s.agents.begin(), s.agents.end(),
                      [](const AgentState& x, const AgentState& y) { return x.name < y.name; }))
    throw ParseError("invalid trace record: agents are not sorted by name");
  return r;
}

std::vector<TraceRecord> parse_trace(std::string_view text) {
  std::vector<TraceRecord> out;
  std::size_t line_no = 0, start = 0;
  while (start < text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos)
      continue;
    try {
      out.push_back(parse_record(line));
    } catch (const ParseError& e) {
      throw ParseError(e.message(), line_no, 1);
    }
    if (out.size() > 1) {
      const Snapshot& prev = out[out.size() - 2].snapshot;
      const Snapshot& cur = out.back().snapshot;
      if (cur.seq <= prev.seq)
        throw ParseError("sequence numbers must increase", line_no, 1);
      if (cur.clock < prev.clock)
        throw ParseError("clock decreases from " + prev.clock.to_string() + " to " + cur.clock.to_string(),
                         line_no, 1);
    }
  }
  if (out.empty())
    throw ParseError("empty trace");
  return out;
}

NameIndex collect_names(const std::vector<TraceRecord>& trace) {
  NameIndex n;
  for (const auto& r : trace) {
    for (const auto& a : r.snapshot.agents) {
      n.agents.insert(a.name);
      n.tasks[a.name].insert(a.task);
      n.input_kinds.insert(a.inputs.begin(), a.inputs.end());
      for (const auto& m : a.messages)
        n.message_kinds.insert(m.kind);
    }
    for (const auto& m : r.snapshot.in_transit)
      n.message_kinds.insert(m.kind);
  }
  return n;
}

std::vector<std::vector<std::optional<Verdict>>> check_trace(const std::vector<TraceRecord>& trace,
                                                             const std::vector<Property>& properties,
                                                             const BindingSet& bindings, MonitorOptions options) {
  std::vector<MonitorState> monitors;
  for (const auto& p : properties)
    monitors.emplace_back(p);
  std::vector<std::vector<std::optional<Verdict>>> out;
  for (const auto& r : trace)
    out.push_back(dispatch(r.snapshot, monitors, bindings, options, Execution::Serial));
  return out;
}

std::string verdict_line(std::uint64_t seq, const std::vector<std::optional<Verdict>>& verdicts) {
  ordered_json j;
  j["v"] = kTraceVersion;
  j["seq"] = seq;
  j["verdicts"] = verdicts_json(verdicts);
  return j.dump();
}

int verdict_exit_code(const std::vector<std::optional<Verdict>>& last) {
  int code = 0;
  for (const auto& v : last) {
    if (v == Verdict::False)
      return 3;
    if (v == Verdict::CurrentlyFalse)
      code = 2;
  }
  return code;
}

} // namespace tempoweave
