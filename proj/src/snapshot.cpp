#include "tempoweave/snapshot.hpp"

#include "tempoweave/error.hpp"

#include <algorithm>
#include <map>

namespace tempoweave {

bool AgentState::holds_input(std::string_view kind) const {
  return inputs.find(std::string(kind)) != inputs.end();
}

bool AgentState::holds_message(std::string_view kind) const {
  return std::any_of(messages.begin(), messages.end(), [&](const Message& m) { return m.kind == kind; });
}

const AgentState* Snapshot::find_agent(std::string_view name) const {
  auto it = std::lower_bound(agents.begin(), agents.end(), name,
                             [](const AgentState& a, std::string_view n) { return a.name < n; });
  return it != agents.end() && it->name == name ? &*it : nullptr;
}

AgentState* Snapshot::find_agent(std::string_view name) {
  return const_cast<AgentState*>(std::as_const(*this).find_agent(name));
}

const AgentState& Snapshot::agent(std::string_view name) const {
  if (const AgentState* a = find_agent(name))
    return *a;
  throw ResolutionError("unknown agent '" + std::string(name) + "'");
}

AgentState& Snapshot::agent(std::string_view name) {
  return const_cast<AgentState&>(std::as_const(*this).agent(name));
}

const ElapsedCounter* Snapshot::find_elapsed(std::string_view agent, std::string_view transition) const {
  for (const auto& e : elapsed)
    if (e.agent == agent && e.transition == transition)
      return &e;
  return nullptr;
}

ElapsedCounter* Snapshot::find_elapsed(std::string_view agent, std::string_view transition) {
  return const_cast<ElapsedCounter*>(std::as_const(*this).find_elapsed(agent, transition));
}

std::vector<std::string> Snapshot::active_agents() const {
  std::vector<std::string> out;
  for (const auto& a : agents)
    if (a.active)
      out.push_back(a.name);
  return out;
}

Snapshot init_snapshot(const Scenario& s) {
  Snapshot snap;
  for (const auto& a : s.agents) {
    AgentState st;
    st.name = a.name;
    st.task = s.initial_task(a).id;
    snap.agents.push_back(std::move(st));
    for (const auto& tr : a.transitions)
      if (tr.trigger.kind == TriggerKind::Timed)
        snap.elapsed.push_back({a.name, tr.id, Time{}});
  }
  std::sort(snap.agents.begin(), snap.agents.end(),
            [](const AgentState& x, const AgentState& y) { return x.name < y.name; });
  std::sort(snap.elapsed.begin(), snap.elapsed.end(), [](const ElapsedCounter& x, const ElapsedCounter& y) {
    return std::tie(x.agent, x.transition) < std::tie(y.agent, y.transition);
  });
  return snap;
}

std::string_view to_string(ViolationCategory c) {
  switch (c) {
  case ViolationCategory::Containment:
    return "containment";
  case ViolationCategory::Range:
    return "range";
  case ViolationCategory::Typing:
    return "typing";
  case ViolationCategory::Reference:
    return "reference";
  }
  return "?";
}

namespace {

class Checker {
public:
  Checker(const Snapshot& snap, const Scenario& s) : snap_(snap), s_(s) {}

  std::vector<Violation> run() {
    if (snap_.clock.is_negative())
      add(ViolationCategory::Range, "negative clock " + snap_.clock.to_string());
    agents();
    elapsed();
    for (const auto& m : snap_.in_transit)
      message(m, "in transit");
    for (const auto& a : snap_.agents)
      for (const auto& m : a.messages) {
        message(m, "held by " + a.name);
        if (m.recipient != a.name)
          add(ViolationCategory::Containment, "message " + std::to_string(m.id) + " addressed to '" +
                                                  m.recipient + "' is held by '" + a.name + "'");
      }
    for (const auto& [id, count] : containers_)
      if (count > 1)
        add(ViolationCategory::Containment,
            "message " + std::to_string(id) + " is in " + std::to_string(count) + " containers");
    return std::move(out_);
  }

private:
  void add(ViolationCategory c, std::string detail) { out_.push_back({c, std::move(detail)}); }

  void agents() {
    for (std::size_t i = 1; i < snap_.agents.size(); ++i)
      if (!(snap_.agents[i - 1].name < snap_.agents[i].name))
        add(ViolationCategory::Reference, "agents not sorted or duplicated at '" + snap_.agents[i].name + "'");
    for (const auto& def : s_.agents)
      if (!snap_.find_agent(def.name))
        add(ViolationCategory::Reference, "agent '" + def.name + "' missing from snapshot");
    for (const auto& a : snap_.agents) {
      const AgentDef* def = s_.find_agent(a.name);
      if (!def) {
        add(ViolationCategory::Reference, "unknown agent '" + a.name + "'");
        continue;
      }
      const TaskDef* task = def->find_task(a.task);
      if (!task)
        add(ViolationCategory::Reference, "agent '" + a.name + "' is at undeclared task '" + a.task + "'");
      else if (!s_.find_task_kind(task->kind))
        add(ViolationCategory::Typing, "task '" + a.task + "' has undeclared kind '" + task->kind + "'");
      for (const auto& input : a.inputs)
        if (!s_.has_input_kind(input))
          add(ViolationCategory::Typing, "agent '" + a.name + "' holds input of unknown kind '" + input + "'");
    }
  }

  void elapsed() {
    std::size_t expected = 0;
    for (const auto& def : s_.agents)
      for (const auto& tr : def.transitions)
        if (tr.trigger.kind == TriggerKind::Timed) {
          ++expected;
          if (!snap_.find_elapsed(def.name, tr.id))
            add(ViolationCategory::Reference,
                "missing elapsed counter for '" + def.name + "." + tr.id + "'");
        }
    for (const auto& e : snap_.elapsed) {
      if (e.value.is_negative())
        add(ViolationCategory::Range,
            "negative elapsed " + e.value.to_string() + " on '" + e.agent + "." + e.transition + "'");
      const AgentDef* def = s_.find_agent(e.agent);
      const TransitionDef* tr = def ? def->find_transition(e.transition) : nullptr;
      if (!tr || tr->trigger.kind != TriggerKind::Timed)
        add(ViolationCategory::Reference,
            "elapsed counter on '" + e.agent + "." + e.transition + "' which is not a timed guard");
    }
    if (snap_.elapsed.size() > expected)
      add(ViolationCategory::Reference, "duplicate elapsed counters");
  }

  void message(const Message& m, const std::string& where) {
    ++containers_[m.id];
    const std::string name = "message " + std::to_string(m.id) + " (" + where + ")";
    if (m.id == 0 || m.id >= snap_.next_message_id)
      add(ViolationCategory::Range, name + " has an id outside the allocated range");
    if (!s_.has_message_kind(m.kind))
      add(ViolationCategory::Typing, name + " has unknown kind '" + m.kind + "'");
    if (!s_.find_agent(m.sender))
      add(ViolationCategory::Reference, name + " has unknown sender '" + m.sender + "'");
    if (!s_.find_agent(m.recipient))
      add(ViolationCategory::Reference, name + " has unknown recipient '" + m.recipient + "'");
  }

  const Snapshot& snap_;
  const Scenario& s_;
  std::map<std::uint64_t, std::size_t> containers_;
  std::vector<Violation> out_;
};

} // namespace

std::vector<Violation> check_conformance(const Snapshot& snap, const Scenario& s) {
  return Checker(snap, s).run();
}

} // namespace tempoweave
