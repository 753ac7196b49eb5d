#pragma once

#include "tempoweave/scenario.hpp"
#include "tempoweave/snapshot.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tempoweave {

enum class RuleName {
  FireInitial,
  FireInput,
  FireGuard,
  FireTimed,
  InsertInput,
  InsertEffectiveInput,
  DeleteInput,
  ReceiveMessage,
};

/// Behavioural rules in the order layer 1 tries them.
inline constexpr std::array<RuleName, 4> kBehaviouralRules = {RuleName::FireInitial, RuleName::FireInput,
                                                              RuleName::FireGuard, RuleName::FireTimed};
/// Environmental rules in the order their matches are concatenated.
inline constexpr std::array<RuleName, 4> kEnvironmentalRules = {
    RuleName::InsertInput, RuleName::InsertEffectiveInput, RuleName::DeleteInput, RuleName::ReceiveMessage};

/// snake_case name, e.g. `fire_transition_with_input`.
std::string_view rule_name(RuleName r);
/// Throws PreconditionError for an unknown name.
RuleName rule_from_name(std::string_view name);

/// One binding of a rule's precondition. Fields not used by the rule stay
/// empty: `transition` for the fire rules, `kind` for input rules and
/// received messages, `message_id` for guard and receive rules.
struct RuleMatch {
  RuleName rule;
  std::string agent;
  std::string transition;
  std::string kind;
  std::uint64_t message_id = 0;

  friend bool operator==(const RuleMatch&, const RuleMatch&) = default;
};

std::string describe(const RuleMatch& m);

/// All matches in deterministic order: agents by name, then transitions in
/// declaration order or kinds by name, then message id.
std::vector<RuleMatch> find_matches(const Scenario& s, RuleName rule, const Snapshot& snap);
std::vector<RuleMatch> find_matches(const Scenario& s, std::string_view rule, const Snapshot& snap);

/// Applies a match after re-checking its precondition (PreconditionError if
/// it does not hold).
Snapshot apply_match(const Scenario& s, const Snapshot& snap, const RuleMatch& m);

Snapshot fire_transition_with_input(const Scenario& s, const Snapshot& snap, const RuleMatch& m);
Snapshot fire_transition_with_guard(const Scenario& s, const Snapshot& snap, const RuleMatch& m);
Snapshot fire_initial_transition(const Scenario& s, const Snapshot& snap, const RuleMatch& m);
Snapshot fire_transition_with_timed_guard(const Scenario& s, const Snapshot& snap, const RuleMatch& m);

/// Throws ResolutionError for an unknown agent or input kind.
Snapshot insert_input(const Scenario& s, const Snapshot& snap, std::string_view agent, std::string_view kind);
/// Throws PreconditionError unless the agent's current task has an outgoing
/// transition triggered by `kind`.
Snapshot insert_effective_input(const Scenario& s, const Snapshot& snap, std::string_view agent,
                                std::string_view kind);
/// Throws PreconditionError if the agent holds no such input.
Snapshot delete_input(const Snapshot& snap, std::string_view agent, std::string_view kind);
/// Throws PreconditionError if no message with that id is in transit.
Snapshot receive_message(const Snapshot& snap, std::uint64_t message_id);

/// Throws PreconditionError for a non-positive delta.
Snapshot step_time(const Snapshot& snap, Time delta);
Snapshot remove_active_marks(const Snapshot& snap);

} // namespace tempoweave
