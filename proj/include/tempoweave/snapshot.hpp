#pragma once

#include "tempoweave/scenario.hpp"
#include "tempoweave/time.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tempoweave {

/// A message instance. The id is unique within a run.
struct Message {
  std::uint64_t id = 0;
  std::string kind;
  std::string sender;
  std::string recipient;

  friend bool operator==(const Message&, const Message&) = default;
};

struct AgentState {
  std::string name;
  std::string task;
  bool active = false;
  std::multiset<std::string> inputs;
  /// Held messages in id order.
  std::vector<Message> messages;

  bool holds_input(std::string_view kind) const;
  bool holds_message(std::string_view kind) const;

  friend bool operator==(const AgentState&, const AgentState&) = default;
};

/// Time elapsed on one timed-guard transition.
struct ElapsedCounter {
  std::string agent;
  std::string transition;
  Time value;

  friend bool operator==(const ElapsedCounter&, const ElapsedCounter&) = default;
};

/// One global state. Agents are kept sorted by name, in-transit messages by
/// id and elapsed counters by (agent, transition).
struct Snapshot {
  std::uint64_t seq = 0;
  Time clock;
  std::vector<AgentState> agents;
  std::vector<ElapsedCounter> elapsed;
  std::vector<Message> in_transit;
  std::uint64_t next_message_id = 1;

  const AgentState* find_agent(std::string_view name) const;
  AgentState* find_agent(std::string_view name);
  /// Throws ResolutionError if the agent is unknown.
  const AgentState& agent(std::string_view name) const;
  AgentState& agent(std::string_view name);

  const ElapsedCounter* find_elapsed(std::string_view agent, std::string_view transition) const;
  ElapsedCounter* find_elapsed(std::string_view agent, std::string_view transition);

  std::vector<std::string> active_agents() const;

  friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

/// Clock 0, every agent at its initial task and inactive, nothing held, one
/// zero elapsed counter per timed-guard transition.
Snapshot init_snapshot(const Scenario& s);

enum class ViolationCategory {
  /// A message in two containers, or held by someone other than its recipient.
  Containment,
  /// Negative clock or elapsed value, or an id beyond the allocation counter.
  Range,
  /// An instance whose kind does not resolve to a declared kind of the right
  /// concept.
  Typing,
  /// Unknown or missing agent, task or transition.
  Reference,
};

std::string_view to_string(ViolationCategory c);

struct Violation {
  ViolationCategory category;
  std::string detail;
};

/// All invariant violations of `snap` against `s`; empty when conformant.
std::vector<Violation> check_conformance(const Snapshot& snap, const Scenario& s);

} // namespace tempoweave
