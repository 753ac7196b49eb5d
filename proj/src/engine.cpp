#include "tempoweave/engine.hpp"

#include "tempoweave/error.hpp"

#include <algorithm>

namespace tempoweave {

namespace {

void after_layer(const Scenario& s, const Snapshot& snap, Layer layer, const CoordinationOptions& options) {
  if (options.check_conformance) {
    const auto violations = check_conformance(snap, s);
    if (!violations.empty())
      throw InternalError("layer " + std::to_string(static_cast<int>(layer)) + " broke conformance: " +
                          std::string(to_string(violations.front().category)) + ": " +
                          violations.front().detail);
  }
  if (options.observer)
    options.observer(layer, snap);
}

} // namespace

StepOutcome coordinate_step(const Scenario& s, const Snapshot& snap, EnvironmentPolicy& policy,
                            std::vector<MonitorState>& monitors, const BindingSet& bindings, Time delta,
                            const CoordinationOptions& options) {
  StepOutcome out;
  Snapshot cur = snap;
  cur.seq = snap.seq + 1;

  // Every fire needs an inactive agent and marks it active, so this loop
  // performs at most one fire per agent.
  for (bool fired = true; fired;) {
    fired = false;
    for (RuleName rule : kBehaviouralRules) {
      const auto matches = find_matches(s, rule, cur);
      if (matches.empty())
        continue;
      cur = apply_match(s, cur, matches.front());
      ++out.fires;
      fired = true;
      break;
    }
    if (out.fires > cur.agents.size())
      throw InternalError("behavioural layer fired more than once per agent");
  }
  after_layer(s, cur, Layer::Behavioural, options);

  out.environment = policy.choose(s, cur, cur.seq);
  if (out.environment)
    cur = apply_match(s, cur, *out.environment);
  after_layer(s, cur, Layer::Environmental, options);

  cur = step_time(cur, delta);
  after_layer(s, cur, Layer::TimeStep, options);

  out.active = cur.active_agents();
  out.verdicts = dispatch(cur, monitors, bindings, options.monitor, options.execution);
  after_layer(s, cur, Layer::Monitoring, options);

  cur = remove_active_marks(cur);
  after_layer(s, cur, Layer::RemoveMarks, options);

  out.snapshot = std::move(cur);
  return out;
}

std::vector<std::optional<Verdict>> RunTrace::final_verdicts() const {
  std::vector<std::optional<Verdict>> out;
  for (const auto& m : monitors)
    out.push_back(m.last_verdict());
  return out;
}

RunTrace run(const Scenario& s, const std::vector<Property>& properties, const BindingSet& bindings,
             EnvironmentPolicy policy, std::size_t steps, Time delta, const RunOptions& options) {
  if (steps == 0)
    throw PreconditionError("a run needs at least one step");
  RunTrace trace;
  trace.initial = init_snapshot(s);
  trace.properties = properties;
  for (const auto& p : properties)
    trace.monitors.emplace_back(p);

  trace.steps.reserve(steps);
  const Snapshot* prev = &trace.initial;
  for (std::size_t k = 0; k < steps; ++k) {
    StepOutcome o = coordinate_step(s, *prev, policy, trace.monitors, bindings, delta, options.coordination);
    if (o.snapshot.clock <= prev->clock || o.snapshot.seq <= prev->seq)
      throw InternalError("clock or sequence number did not advance");
    trace.steps.push_back(std::move(o));
    prev = &trace.steps.back().snapshot;
    const bool all_final =
        !trace.monitors.empty() &&
        std::all_of(trace.monitors.begin(), trace.monitors.end(), [](const MonitorState& m) { return m.is_final(); });
    if (options.early_stop && all_final) {
      trace.status = RunTrace::Status::EarlyStop;
      break;
    }
  }
  return trace;
}

} // namespace tempoweave
