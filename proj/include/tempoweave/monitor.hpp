#pragma once

#include "tempoweave/formula.hpp"
#include "tempoweave/oracle.hpp"
#include "tempoweave/verdict.hpp"

#include <optional>
#include <vector>

namespace tempoweave {

struct MonitorOptions {
  /// Lets a prophecy be witnessed by the event at which it is first reached.
  bool prophecy_includes_now = false;
};

struct StepResult {
  Verdict verdict;
  Formula next_obligation;
};

struct HistoryEntry {
  Time timestamp;
  Verdict verdict;

  friend bool operator==(const HistoryEntry&, const HistoryEntry&) = default;
};

/// Monitor for one `@agent` property.
struct MonitorState {
  Property property;
  Formula obligation;
  std::optional<Time> last_time;
  std::vector<HistoryEntry> history;

  explicit MonitorState(Property p) : property(std::move(p)), obligation(property.body) {}

  /// Records a result produced by monitor_step for `event`.
  void advance(const Event& event, const StepResult& result);
  /// Runs monitor_step and records the result.
  Verdict step(const Event& event, MonitorOptions options = {});

  std::optional<Verdict> last_verdict() const;
  bool is_final() const;
};

/// One application of the rewriting pipeline. Pure: the state is not
/// modified. Throws TimeRegressionError if the event predates last_time.
StepResult monitor_step(const MonitorState& state, const Event& event, MonitorOptions options = {});

/// Same pipeline on a bare obligation; `delta` is the time since the previous
/// event (zero for the first).
StepResult monitor_step(const Formula& obligation, Time delta, const Event& event,
                        MonitorOptions options = {});

// Pipeline stages, exposed for testing.

/// Marks the root, then pushes marks through Not/Or/And/Implies so that
/// exactly the outermost temporal operators, atoms and constants carry one.
Formula mark_outermost(const Formula& tree);

/// Rewrites marked U, F and G into their one-step form.
Formula unroll_marked(const Formula& tree);

/// Decreases the bounds of every active prophecy by `delta`.
/// Throws PreconditionError for negative delta.
Formula shift_prophecies(const Formula& tree, Time delta);

/// Replaces marked atoms by marked constants.
Formula evaluate_atoms(const Formula& tree, const Event& event);

/// Decides marked active prophecies where possible and unmarks the rest.
Formula evaluate_prophecies(const Formula& tree, const Event& event, MonitorOptions options = {});

/// Marked inactive prophecies become unmarked active ones.
Formula activate_prophecies(const Formula& tree);

/// Folds the processed tree into a single verdict. Throws InternalError if a
/// node cannot be collapsed.
Verdict verdict_collapse(const Formula& tree);

/// Removes outermost X/WX, simplifies and clears every mark.
Formula obligation_rewrite(const Formula& tree);

/// Boolean constant simplification of the layer above temporal operators.
Formula simplify(const Formula& tree);

/// Copy of the tree with every mark cleared.
Formula clear_marks(const Formula& tree);

} // namespace tempoweave
