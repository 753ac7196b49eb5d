#pragma once

#include "tempoweave/binding.hpp"
#include "tempoweave/monitor.hpp"
#include "tempoweave/snapshot.hpp"

#include <optional>
#include <vector>

namespace tempoweave {

/// Throws ResolutionError unless the annotated agent and every remote agent
/// exist and every proposition of the body has a binding.
void validate_property(const Property& p, const BindingSet& b, const NameIndex& names);

/// The event seen by `p`'s agent: every binding that holds with `self` bound to
/// that agent, plus `@B.q` for each remote atom whose binding holds with
/// `self` bound to B. Timestamp is the snapshot clock.
/// Throws PreconditionError if the agent is not active and ResolutionError
/// for an unbound proposition.
Event resolve_event(const Snapshot& snap, const Property& p, const BindingSet& b);

enum class Execution { Serial, Parallel };

/// Steps every monitor whose agent is active in `snap`. The result has one
/// entry per monitor, empty for monitors that were not stepped. Monitors own
/// their state, so the parallel schedule gives the same result as the serial
/// one.
std::vector<std::optional<Verdict>> dispatch(const Snapshot& snap, std::vector<MonitorState>& monitors,
                                             const BindingSet& b, MonitorOptions options = {},
                                             Execution execution = Execution::Parallel);

} // namespace tempoweave
