#include "tempoweave/scenario.hpp"

#include "tempoweave/detail/scanner.hpp"
#include "tempoweave/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tempoweave {

const TaskDef* AgentDef::find_task(std::string_view id) const {
  for (const auto& t : tasks)
    if (t.id == id)
      return &t;
  return nullptr;
}

const TransitionDef* AgentDef::find_transition(std::string_view id) const {
  for (const auto& t : transitions)
    if (t.id == id)
      return &t;
  return nullptr;
}

const AgentDef* Scenario::find_agent(std::string_view agent) const {
  for (const auto& a : agents)
    if (a.name == agent)
      return &a;
  return nullptr;
}

const TaskKind* Scenario::find_task_kind(std::string_view kind) const {
  for (const auto& k : task_kinds)
    if (k.name == kind)
      return &k;
  return nullptr;
}

bool Scenario::has_input_kind(std::string_view kind) const {
  return std::find(input_kinds.begin(), input_kinds.end(), kind) != input_kinds.end();
}

bool Scenario::has_message_kind(std::string_view kind) const {
  return std::find(message_kinds.begin(), message_kinds.end(), kind) != message_kinds.end();
}

const TaskDef& Scenario::initial_task(const AgentDef& agent) const {
  for (const auto& t : agent.tasks)
    if (const TaskKind* k = find_task_kind(t.kind); k && k->initial)
      return t;
  throw ResolutionError("agent '" + agent.name + "' has no initial task");
}

bool Scenario::is_initial_task(const AgentDef& agent, std::string_view task_id) const {
  const TaskDef* t = agent.find_task(task_id);
  if (!t)
    return false;
  const TaskKind* k = find_task_kind(t->kind);
  return k && k->initial;
}

namespace {

using detail::TokenCursor;

bool is_keyword(std::string_view w) {
  static const std::set<std::string_view> words = {
      "system", "taskkind", "initial", "inputkind", "messagekind", "timestep", "agent", "task",
      "transition", "on", "input", "message", "after", "send", "to"};
  return words.count(w) != 0;
}

std::string name(TokenCursor& c, const char* what) {
  const auto& t = c.peek();
  std::string n = c.ident(what);
  if (is_keyword(n))
    c.fail_at(t, "keyword '" + n + "' cannot be used as " + what);
  return n;
}

TransitionDef parse_transition(TokenCursor& c) {
  c.word("transition");
  TransitionDef tr;
  tr.id = name(c, "transition id");
  c.punct(":");
  tr.source = name(c, "source task");
  c.punct("->");
  tr.target = name(c, "target task");
  if (c.is_word("on")) {
    c.take();
    if (c.is_word("input")) {
      c.take();
      tr.trigger = Trigger::input(name(c, "input kind"));
    } else if (c.is_word("message")) {
      c.take();
      tr.trigger = Trigger::message(name(c, "message kind"));
    } else {
      c.fail("expected 'input' or 'message' after 'on'");
    }
  } else if (c.is_word("after")) {
    c.take();
    tr.trigger = Trigger::timed(c.number("timed guard threshold"));
  }
  while (c.is_word("send")) {
    c.take();
    Send s;
    s.message_kind = name(c, "message kind");
    c.word("to");
    s.recipient = name(c, "recipient agent");
    tr.sends.push_back(std::move(s));
  }
  return tr;
}

AgentDef parse_agent(TokenCursor& c) {
  c.word("agent");
  AgentDef a;
  a.name = name(c, "agent name");
  c.punct("{");
  while (c.is_word("task")) {
    c.take();
    TaskDef t;
    t.id = name(c, "task id");
    c.punct(":");
    t.kind = name(c, "task kind");
    a.tasks.push_back(std::move(t));
  }
  while (c.is_word("transition"))
    a.transitions.push_back(parse_transition(c));
  c.punct("}");
  return a;
}

std::string describe_trigger(const Trigger& t) {
  switch (t.kind) {
  case TriggerKind::None:
    return "no trigger";
  case TriggerKind::Input:
    return "input " + t.name;
  case TriggerKind::Message:
    return "message " + t.name;
  case TriggerKind::Timed:
    return "after " + t.threshold.to_string();
  }
  return "?";
}

template <typename Range, typename Key>
void require_unique(const Range& items, Key key, const std::string& what) {
  std::set<std::string> seen;
  for (const auto& item : items)
    if (!seen.insert(key(item)).second)
      throw ResolutionError("duplicate " + what + " '" + key(item) + "'");
}

} // namespace

Scenario load_scenario(std::string_view text) {
  TokenCursor c(text);
  Scenario s;
  c.word("system");
  s.name = name(c, "system name");
  while (!c.at_end()) {
    if (c.is_word("taskkind")) {
      c.take();
      TaskKind k{name(c, "task kind"), false};
      if (c.is_word("initial")) {
        c.take();
        k.initial = true;
      }
      s.task_kinds.push_back(std::move(k));
    } else if (c.is_word("inputkind")) {
      c.take();
      s.input_kinds.push_back(name(c, "input kind"));
    } else if (c.is_word("messagekind")) {
      c.take();
      s.message_kinds.push_back(name(c, "message kind"));
    } else if (c.is_word("timestep")) {
      c.take();
      if (s.timestep)
        c.fail("duplicate 'timestep' declaration");
      s.timestep = c.number("timestep");
    } else if (c.is_word("agent")) {
      s.agents.push_back(parse_agent(c));
    } else {
      c.fail("expected a declaration (taskkind, inputkind, messagekind, timestep, agent)");
    }
  }
  validate_scenario(s);
  return s;
}

void validate_scenario(const Scenario& s) {
  require_unique(s.task_kinds, [](const TaskKind& k) { return k.name; }, "task kind");
  require_unique(s.input_kinds, [](const std::string& k) { return k; }, "input kind");
  require_unique(s.message_kinds, [](const std::string& k) { return k; }, "message kind");
  require_unique(s.agents, [](const AgentDef& a) { return a.name; }, "agent");
  if (s.timestep && s.timestep->ticks() <= 0)
    throw ResolutionError("timestep must be positive, got " + s.timestep->to_string());

  for (const auto& a : s.agents) {
    const std::string where = "agent '" + a.name + "': ";
    require_unique(a.tasks, [](const TaskDef& t) { return t.id; }, where + "task");
    require_unique(a.transitions, [](const TransitionDef& t) { return t.id; }, where + "transition");
    std::size_t initial = 0;
    for (const auto& t : a.tasks) {
      const TaskKind* k = s.find_task_kind(t.kind);
      if (!k)
        throw ResolutionError(where + "task '" + t.id + "' has undeclared kind '" + t.kind + "'");
      initial += k->initial ? 1 : 0;
    }
    if (initial != 1)
      throw ResolutionError(where + "needs exactly one task of an initial kind, found " +
                            std::to_string(initial));

    std::set<std::pair<std::string, std::string>> triggers;
    for (const auto& tr : a.transitions) {
      const std::string at = where + "transition '" + tr.id + "': ";
      if (!a.find_task(tr.source))
        throw ResolutionError(at + "unknown source task '" + tr.source + "'");
      if (!a.find_task(tr.target))
        throw ResolutionError(at + "unknown target task '" + tr.target + "'");
      switch (tr.trigger.kind) {
      case TriggerKind::None:
        if (!s.is_initial_task(a, tr.source))
          throw ResolutionError(at + "a transition without trigger must leave an initial task");
        break;
      case TriggerKind::Input:
        if (!s.has_input_kind(tr.trigger.name))
          throw ResolutionError(at + "unknown input kind '" + tr.trigger.name + "'");
        break;
      case TriggerKind::Message:
        if (!s.has_message_kind(tr.trigger.name))
          throw ResolutionError(at + "unknown message kind '" + tr.trigger.name + "'");
        break;
      case TriggerKind::Timed:
        if (tr.trigger.threshold.ticks() <= 0)
          throw ResolutionError(at + "timed guard threshold must be positive");
        break;
      }
      if (!triggers.insert({tr.source, describe_trigger(tr.trigger)}).second)
        throw ResolutionError(at + "task '" + tr.source + "' already has a transition with " +
                              describe_trigger(tr.trigger));
      for (const auto& send : tr.sends) {
        if (!s.has_message_kind(send.message_kind))
          throw ResolutionError(at + "unknown message kind '" + send.message_kind + "'");
        if (!s.find_agent(send.recipient))
          throw ResolutionError(at + "unknown recipient agent '" + send.recipient + "'");
      }
    }
  }
}

std::string print_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "system " << s.name << "\n";
  for (const auto& k : s.task_kinds)
    out << "taskkind " << k.name << (k.initial ? " initial" : "") << "\n";
  for (const auto& k : s.input_kinds)
    out << "inputkind " << k << "\n";
  for (const auto& k : s.message_kinds)
    out << "messagekind " << k << "\n";
  if (s.timestep)
    out << "timestep " << s.timestep->to_string() << "\n";
  for (const auto& a : s.agents) {
    out << "\nagent " << a.name << " {\n";
    for (const auto& t : a.tasks)
      out << "  task " << t.id << ": " << t.kind << "\n";
    for (const auto& tr : a.transitions) {
      out << "  transition " << tr.id << ": " << tr.source << " -> " << tr.target;
      switch (tr.trigger.kind) {
      case TriggerKind::None:
        break;
      case TriggerKind::Input:
        out << " on input " << tr.trigger.name;
        break;
      case TriggerKind::Message:
        out << " on message " << tr.trigger.name;
        break;
      case TriggerKind::Timed:
        out << " after " << tr.trigger.threshold.to_string();
        break;
      }
      for (const auto& send : tr.sends)
        out << "\n      send " << send.message_kind << " to " << send.recipient;
      out << "\n";
    }
    out << "}\n";
  }
  return out.str();
}

} // namespace tempoweave
