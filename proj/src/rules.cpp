#include "tempoweave/rules.hpp"

#include "tempoweave/error.hpp"

#include <algorithm>
#include <set>

namespace tempoweave {

namespace {

constexpr std::array<RuleName, 8> kAllRules = {
    RuleName::FireInitial, RuleName::FireInput,           RuleName::FireGuard,   RuleName::FireTimed,
    RuleName::InsertInput, RuleName::InsertEffectiveInput, RuleName::DeleteInput, RuleName::ReceiveMessage};

const AgentDef& agent_def(const Scenario& s, std::string_view name) {
  if (const AgentDef* a = s.find_agent(name))
    return *a;
  throw ResolutionError("unknown agent '" + std::string(name) + "'");
}

bool triggered_by(const TransitionDef& tr, TriggerKind kind) { return tr.trigger.kind == kind; }

void fire_matches(const Scenario& s, const Snapshot& snap, RuleName rule, std::vector<RuleMatch>& out) {
  for (const auto& a : snap.agents) {
    if (a.active)
      continue;
    const AgentDef* def = s.find_agent(a.name);
    if (!def)
      continue;
    for (const auto& tr : def->transitions) {
      if (tr.source != a.task)
        continue;
      switch (rule) {
      case RuleName::FireInitial:
        if (triggered_by(tr, TriggerKind::None) && s.is_initial_task(*def, a.task))
          out.push_back({rule, a.name, tr.id, {}, 0});
        break;
      case RuleName::FireInput:
        if (triggered_by(tr, TriggerKind::Input) && a.holds_input(tr.trigger.name))
          out.push_back({rule, a.name, tr.id, tr.trigger.name, 0});
        break;
      case RuleName::FireGuard:
        if (triggered_by(tr, TriggerKind::Message))
          for (const auto& m : a.messages)
            if (m.kind == tr.trigger.name)
              out.push_back({rule, a.name, tr.id, m.kind, m.id});
        break;
      case RuleName::FireTimed:
        if (triggered_by(tr, TriggerKind::Timed)) {
          const ElapsedCounter* e = snap.find_elapsed(a.name, tr.id);
          if (e && e->value >= tr.trigger.threshold)
            out.push_back({rule, a.name, tr.id, {}, 0});
        }
        break;
      default:
        break;
      }
    }
  }
}

// Shared postcondition of the four fire rules.
Snapshot fire(const Scenario& s, const Snapshot& snap, const RuleMatch& m) {
  const AgentDef& def = agent_def(s, m.agent);
  const TransitionDef* tr = def.find_transition(m.transition);
  if (!tr)
    throw PreconditionError("unknown transition '" + m.transition + "' of agent '" + m.agent + "'");
  Snapshot next = snap;
  AgentState& a = next.agent(m.agent);
  a.task = tr->target;
  a.active = true;
  if (m.rule == RuleName::FireGuard) {
    auto it = std::find_if(a.messages.begin(), a.messages.end(),
                           [&](const Message& held) { return held.id == m.message_id; });
    a.messages.erase(it);
  }
  for (const auto& send : tr->sends)
    next.in_transit.push_back({next.next_message_id++, send.message_kind, m.agent, send.recipient});
  // Timed guards measure time spent in their source task, so they restart
  // whenever that task is entered.
  for (const auto& out : def.transitions)
    if (out.trigger.kind == TriggerKind::Timed && (out.id == tr->id || out.source == tr->target))
      if (ElapsedCounter* e = next.find_elapsed(m.agent, out.id))
        e->value = Time{};
  return next;
}

Snapshot checked(const Scenario& s, const Snapshot& snap, const RuleMatch& m, RuleName expected) {
  if (m.rule != expected)
    throw PreconditionError("match for " + std::string(rule_name(m.rule)) + " passed to " +
                            std::string(rule_name(expected)));
  return apply_match(s, snap, m);
}

} // namespace

std::string_view rule_name(RuleName r) {
  switch (r) {
  case RuleName::FireInitial:
    return "fire_initial_transition";
  case RuleName::FireInput:
    return "fire_transition_with_input";
  case RuleName::FireGuard:
    return "fire_transition_with_guard";
  case RuleName::FireTimed:
    return "fire_transition_with_timed_guard";
  case RuleName::InsertInput:
    return "insert_input";
  case RuleName::InsertEffectiveInput:
    return "insert_effective_input";
  case RuleName::DeleteInput:
    return "delete_input";
  case RuleName::ReceiveMessage:
    return "receive_message";
  }
  return "?";
}

RuleName rule_from_name(std::string_view name) {
  for (RuleName r : kAllRules)
    if (rule_name(r) == name)
      return r;
  throw PreconditionError("unknown rule '" + std::string(name) + "'");
}

std::string describe(const RuleMatch& m) {
  switch (m.rule) {
  case RuleName::FireInitial:
  case RuleName::FireInput:
  case RuleName::FireGuard:
  case RuleName::FireTimed:
    return std::string(rule_name(m.rule)) + " " + m.agent + "." + m.transition;
  case RuleName::InsertInput:
    return "insert " + m.kind + " into " + m.agent;
  case RuleName::InsertEffectiveInput:
    return "insert! " + m.kind + " into " + m.agent;
  case RuleName::DeleteInput:
    return "delete " + m.kind + " from " + m.agent;
  case RuleName::ReceiveMessage:
    return "receive message " + std::to_string(m.message_id) + " (" + m.kind + ") at " + m.agent;
  }
  return "?";
}

std::vector<RuleMatch> find_matches(const Scenario& s, RuleName rule, const Snapshot& snap) {
  std::vector<RuleMatch> out;
  switch (rule) {
  case RuleName::FireInitial:
  case RuleName::FireInput:
  case RuleName::FireGuard:
  case RuleName::FireTimed:
    fire_matches(s, snap, rule, out);
    break;
  case RuleName::InsertInput: {
    const std::set<std::string> kinds(s.input_kinds.begin(), s.input_kinds.end());
    for (const auto& a : snap.agents)
      for (const auto& k : kinds)
        out.push_back({rule, a.name, {}, k, 0});
    break;
  }
  case RuleName::InsertEffectiveInput:
    for (const auto& a : snap.agents) {
      const AgentDef* def = s.find_agent(a.name);
      if (!def)
        continue;
      std::set<std::string> kinds;
      for (const auto& tr : def->transitions)
        if (tr.source == a.task && tr.trigger.kind == TriggerKind::Input)
          kinds.insert(tr.trigger.name);
      for (const auto& k : kinds)
        out.push_back({rule, a.name, {}, k, 0});
    }
    break;
  case RuleName::DeleteInput:
    for (const auto& a : snap.agents)
      for (const auto& k : std::set<std::string>(a.inputs.begin(), a.inputs.end()))
        out.push_back({rule, a.name, {}, k, 0});
    break;
  case RuleName::ReceiveMessage:
    for (const auto& m : snap.in_transit)
      out.push_back({rule, m.recipient, {}, m.kind, m.id});
    break;
  }
  return out;
}

std::vector<RuleMatch> find_matches(const Scenario& s, std::string_view rule, const Snapshot& snap) {
  return find_matches(s, rule_from_name(rule), snap);
}

Snapshot apply_match(const Scenario& s, const Snapshot& snap, const RuleMatch& m) {
  const auto matches = find_matches(s, m.rule, snap);
  if (std::find(matches.begin(), matches.end(), m) == matches.end())
    throw PreconditionError("precondition of " + std::string(rule_name(m.rule)) + " does not hold for " +
                            describe(m));
  switch (m.rule) {
  case RuleName::FireInitial:
  case RuleName::FireInput:
  case RuleName::FireGuard:
  case RuleName::FireTimed:
    return fire(s, snap, m);
  case RuleName::InsertInput:
  case RuleName::InsertEffectiveInput: {
    Snapshot next = snap;
    next.agent(m.agent).inputs.insert(m.kind);
    return next;
  }
  case RuleName::DeleteInput: {
    Snapshot next = snap;
    auto& inputs = next.agent(m.agent).inputs;
    inputs.erase(inputs.find(m.kind));
    return next;
  }
  case RuleName::ReceiveMessage: {
    Snapshot next = snap;
    auto it = std::find_if(next.in_transit.begin(), next.in_transit.end(),
                           [&](const Message& msg) { return msg.id == m.message_id; });
    const Message msg = *it;
    next.in_transit.erase(it);
    AgentState& r = next.agent(msg.recipient);
    r.messages.insert(std::upper_bound(r.messages.begin(), r.messages.end(), msg,
                                       [](const Message& x, const Message& y) { return x.id < y.id; }),
                      msg);
    r.active = true;
    return next;
  }
  }
  throw InternalError("apply_match: unknown rule");
}

Snapshot fire_transition_with_input(const Scenario& s, const Snapshot& snap, const RuleMatch& m) {
  return checked(s, snap, m, RuleName::FireInput);
}

Snapshot fire_transition_with_guard(const Scenario& s, const Snapshot& snap, const RuleMatch& m) {
  return checked(s, snap, m, RuleName::FireGuard);
}

Snapshot fire_initial_transition(const Scenario& s, const Snapshot& snap, const RuleMatch& m) {
  return checked(s, snap, m, RuleName::FireInitial);
}

Snapshot fire_transition_with_timed_guard(const Scenario& s, const Snapshot& snap, const RuleMatch& m) {
  return checked(s, snap, m, RuleName::FireTimed);
}

Snapshot insert_input(const Scenario& s, const Snapshot& snap, std::string_view agent, std::string_view kind) {
  if (!snap.find_agent(agent))
    throw ResolutionError("unknown agent '" + std::string(agent) + "'");
  if (!s.has_input_kind(kind))
    throw ResolutionError("unknown input kind '" + std::string(kind) + "'");
  return apply_match(s, snap, {RuleName::InsertInput, std::string(agent), {}, std::string(kind), 0});
}

Snapshot insert_effective_input(const Scenario& s, const Snapshot& snap, std::string_view agent,
                                std::string_view kind) {
  return apply_match(s, snap, {RuleName::InsertEffectiveInput, std::string(agent), {}, std::string(kind), 0});
}

Snapshot delete_input(const Snapshot& snap, std::string_view agent, std::string_view kind) {
  const AgentState* a = snap.find_agent(agent);
  if (!a || !a->holds_input(kind))
    throw PreconditionError("agent '" + std::string(agent) + "' holds no input '" + std::string(kind) + "'");
  Snapshot next = snap;
  auto& inputs = next.agent(agent).inputs;
  inputs.erase(inputs.find(std::string(kind)));
  return next;
}

Snapshot receive_message(const Snapshot& snap, std::uint64_t message_id) {
  auto it = std::find_if(snap.in_transit.begin(), snap.in_transit.end(),
                         [&](const Message& m) { return m.id == message_id; });
  if (it == snap.in_transit.end())
    throw PreconditionError("no message " + std::to_string(message_id) + " in transit");
  return apply_match(Scenario{}, snap, {RuleName::ReceiveMessage, it->recipient, {}, it->kind, it->id});
}

Snapshot step_time(const Snapshot& snap, Time delta) {
  if (delta.ticks() <= 0)
    throw PreconditionError("time step must be positive, got " + delta.to_string());
  Snapshot next = snap;
  next.clock += delta;
  for (auto& e : next.elapsed)
    e.value += delta;
  return next;
}

Snapshot remove_active_marks(const Snapshot& snap) {
  Snapshot next = snap;
  for (auto& a : next.agents)
    a.active = false;
  return next;
}

} // namespace tempoweave
