#pragma once

#include "tempoweave/binding.hpp"
#include "tempoweave/engine.hpp"
#include "tempoweave/monitor.hpp"
#include "tempoweave/snapshot.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tempoweave {

inline constexpr int kTraceVersion = 1;

/// One line of a simulation trace. The snapshot carries the active marks the
/// monitors saw during the step.
struct TraceRecord {
  Snapshot snapshot;
  std::vector<std::optional<Verdict>> verdicts;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

/// Record for a coordination step: the post-step snapshot with the active
/// marks restored from `outcome.active`.
TraceRecord to_record(const StepOutcome& outcome);

/// Single-line JSON:
///
///     {"v":1,"seq":N,"clock":"T",
///      "agents":[{"name","task","active","inputs":[..],"messages":[{"id","kind","sender"}]}],
///      "elapsed":[{"agent","transition","value"}],
///      "in_transit":[{"id","kind","sender","recipient"}],
///      "verdicts":["T"|"Tc"|"Fc"|"F"|null, ..]}
std::string serialize(const TraceRecord& r);

/// Throws ParseError when the line is not a valid record.
TraceRecord parse_record(std::string_view line);

/// Schema problems of one line; empty when valid.
std::vector<std::string> validate_record(std::string_view line);

/// Parses a whole trace, one record per non-empty line. Throws ParseError
/// (with the line number) on a malformed line or if seq does not increase or
/// the clock decreases.
std::vector<TraceRecord> parse_trace(std::string_view text);

/// Names that appear anywhere in the trace, for binding resolution.
NameIndex collect_names(const std::vector<TraceRecord>& trace);

/// Replays the monitors over the recorded snapshots. One verdict row per
/// record, one entry per property.
std::vector<std::vector<std::optional<Verdict>>> check_trace(const std::vector<TraceRecord>& trace,
                                                             const std::vector<Property>& properties,
                                                             const BindingSet& bindings,
                                                             MonitorOptions options = {});

/// `{"v":1,"seq":N,"verdicts":[..]}`
std::string verdict_line(std::uint64_t seq, const std::vector<std::optional<Verdict>>& verdicts);

/// 3 if any verdict is F, else 2 if any is Fc, else 0. Empty entries are
/// ignored.
int verdict_exit_code(const std::vector<std::optional<Verdict>>& last);

} // namespace tempoweave
