#pragma once

#include "tempoweave/time.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tempoweave {

struct TaskKind {
  std::string name;
  bool initial = false;

  friend bool operator==(const TaskKind&, const TaskKind&) = default;
};

enum class TriggerKind { None, Input, Message, Timed };

struct Trigger {
  TriggerKind kind = TriggerKind::None;
  /// Input or message kind for Input and Message triggers.
  std::string name;
  /// Threshold of a Timed trigger.
  Time threshold;

  static Trigger none() { return {}; }
  static Trigger input(std::string kind) { return {TriggerKind::Input, std::move(kind), {}}; }
  static Trigger message(std::string kind) { return {TriggerKind::Message, std::move(kind), {}}; }
  static Trigger timed(Time threshold) { return {TriggerKind::Timed, {}, threshold}; }

  friend bool operator==(const Trigger&, const Trigger&) = default;
};

struct Send {
  std::string message_kind;
  std::string recipient;

  friend bool operator==(const Send&, const Send&) = default;
};

struct TransitionDef {
  std::string id;
  std::string source;
  std::string target;
  Trigger trigger;
  std::vector<Send> sends;

  friend bool operator==(const TransitionDef&, const TransitionDef&) = default;
};

struct TaskDef {
  std::string id;
  std::string kind;

  friend bool operator==(const TaskDef&, const TaskDef&) = default;
};

struct AgentDef {
  std::string name;
  std::vector<TaskDef> tasks;
  std::vector<TransitionDef> transitions;

  const TaskDef* find_task(std::string_view id) const;
  const TransitionDef* find_transition(std::string_view id) const;

  friend bool operator==(const AgentDef&, const AgentDef&) = default;
};

/// Static workflow definition. Declaration order is preserved so that
/// printing reproduces the input structure.
struct Scenario {
  std::string name;
  std::vector<TaskKind> task_kinds;
  std::vector<std::string> input_kinds;
  std::vector<std::string> message_kinds;
  std::optional<Time> timestep;
  std::vector<AgentDef> agents;

  const AgentDef* find_agent(std::string_view name) const;
  const TaskKind* find_task_kind(std::string_view name) const;
  bool has_input_kind(std::string_view name) const;
  bool has_message_kind(std::string_view name) const;

  /// The agent's task whose kind is tagged initial.
  const TaskDef& initial_task(const AgentDef& agent) const;
  bool is_initial_task(const AgentDef& agent, std::string_view task_id) const;

  /// The declared timestep, or 1.
  Time default_timestep() const { return timestep.value_or(Time::units(1)); }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Parses the scenario text format:
///
///     scenario  := "system" IDENT decl*
///     decl      := "taskkind" IDENT ("initial")?
///                | "inputkind" IDENT | "messagekind" IDENT
///                | "timestep" NUM
///                | "agent" IDENT "{" task* transition* "}"
///     task      := "task" IDENT ":" IDENT
///     transition:= "transition" IDENT ":" IDENT "->" IDENT trigger? send*
///     trigger   := "on" "input" IDENT | "on" "message" IDENT | "after" NUM
///     send      := "send" IDENT "to" IDENT
///
/// Throws ParseError for syntax errors and ResolutionError when the result
/// fails validate_scenario.
Scenario load_scenario(std::string_view text);

std::string print_scenario(const Scenario& s);

/// Throws ResolutionError on duplicate names, dangling references, a missing
/// or repeated initial task, two transitions sharing (source, trigger), a
/// non-positive timed threshold or a trigger-less transition that does not
/// leave an initial task.
void validate_scenario(const Scenario& s);

} // namespace tempoweave
