#pragma once

#include "tempoweave/binding.hpp"
#include "tempoweave/dispatch.hpp"
#include "tempoweave/policy.hpp"
#include "tempoweave/rules.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tempoweave {

enum class Layer { Behavioural = 1, Environmental = 2, TimeStep = 3, Monitoring = 4, RemoveMarks = 5 };

struct CoordinationOptions {
  MonitorOptions monitor;
  Execution execution = Execution::Parallel;
  /// Re-check conformance after every layer; a violation is an InternalError.
  bool check_conformance = true;
  /// Called with the snapshot produced by each layer.
  std::function<void(Layer, const Snapshot&)> observer;
};

struct StepOutcome {
  /// Snapshot after layer 5 (no active marks).
  Snapshot snapshot;
  /// Agents that carried the active mark when the monitors ran.
  std::vector<std::string> active;
  /// One entry per monitor; empty when its agent was inactive.
  std::vector<std::optional<Verdict>> verdicts;
  /// Behavioural rule applications in layer 1.
  std::size_t fires = 0;
  std::optional<RuleMatch> environment;
};

/// One pass through layers 1 to 5 producing snapshot `snap.seq + 1`.
StepOutcome coordinate_step(const Scenario& s, const Snapshot& snap, EnvironmentPolicy& policy,
                            std::vector<MonitorState>& monitors, const BindingSet& bindings, Time delta,
                            const CoordinationOptions& options = {});

struct RunOptions {
  CoordinationOptions coordination;
  /// Stop once every monitor holds a final verdict (requires at least one).
  bool early_stop = true;
};

struct RunTrace {
  enum class Status { Completed, EarlyStop };

  Snapshot initial;
  std::vector<Property> properties;
  std::vector<StepOutcome> steps;
  Status status = Status::Completed;
  /// Monitors after the last step.
  std::vector<MonitorState> monitors;

  /// Last verdict emitted per property, empty if its agent was never active.
  std::vector<std::optional<Verdict>> final_verdicts() const;
};

/// init_snapshot followed by up to `steps` coordination steps. Throws
/// PreconditionError for steps == 0.
RunTrace run(const Scenario& s, const std::vector<Property>& properties, const BindingSet& bindings,
             EnvironmentPolicy policy, std::size_t steps, Time delta, const RunOptions& options = {});

} // namespace tempoweave
