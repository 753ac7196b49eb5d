#pragma once

#include "tempoweave/rules.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace tempoweave {

/// A scheduled environmental action, named the way schedule files write it.
struct EnvAction {
  enum class Kind { Noop, Insert, InsertEffective, Delete, Receive };

  Kind kind = Kind::Noop;
  /// Input kind, or message kind for Receive.
  std::string name;
  /// Target agent, or recipient for Receive.
  std::string agent;
  /// Sender for Receive.
  std::string sender;

  friend bool operator==(const EnvAction&, const EnvAction&) = default;
};

struct ScheduleEntry {
  std::uint64_t step;
  EnvAction action;

  friend bool operator==(const ScheduleEntry&, const ScheduleEntry&) = default;
};

/// Lines `at <step>: <action>` with action one of `insert K into A`,
/// `insert! K into A`, `delete K from A`, `receive K from S at R`, `noop`.
/// Steps must be strictly increasing.
std::vector<ScheduleEntry> parse_schedule(std::string_view text);
std::string print_schedule(const std::vector<ScheduleEntry>& schedule);

/// The environmental match an action denotes in `snap`, or nullopt for
/// `noop`. A receive picks the lowest-id matching message. Throws
/// PreconditionError if the action is not applicable.
std::optional<RuleMatch> resolve_action(const Scenario& s, const Snapshot& snap, const EnvAction& action);

/// All environmental matches in find_matches order.
std::vector<RuleMatch> environmental_matches(const Scenario& s, const Snapshot& snap);

/// Picks an index into the offered matches, or nullopt for no-op.
using Chooser = std::function<std::optional<std::size_t>(const Snapshot&, const std::vector<RuleMatch>&)>;

/// Layer 2 selection strategy.
class EnvironmentPolicy {
public:
  enum class Mode { Scripted, Seeded, Interactive };

  /// Steps without an entry are no-ops, or PolicyExhaustedError when strict.
  static EnvironmentPolicy scripted(std::vector<ScheduleEntry> schedule, bool strict = false);
  /// Uniform over all environmental matches plus one no-op option.
  static EnvironmentPolicy seeded(std::uint64_t seed);
  static EnvironmentPolicy interactive(Chooser chooser);

  Mode mode() const { return mode_; }

  /// The action for coordination step `step` (1-based).
  std::optional<RuleMatch> choose(const Scenario& s, const Snapshot& snap, std::uint64_t step);

private:
  EnvironmentPolicy() = default;

  Mode mode_ = Mode::Scripted;
  std::vector<ScheduleEntry> schedule_;
  bool strict_ = false;
  std::mt19937_64 rng_;
  Chooser chooser_;
};

} // namespace tempoweave
