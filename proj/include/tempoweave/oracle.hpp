#pragma once

#include "tempoweave/formula.hpp"
#include "tempoweave/time.hpp"
#include "tempoweave/verdict.hpp"

#include <initializer_list>
#include <set>
#include <string>
#include <vector>

namespace tempoweave {

/// One letter of a timed word: the propositions that hold and an absolute
/// timestamp. Remote propositions are stored under their `@B.p` key.
struct Event {
  std::set<std::string> propositions;
  Time timestamp;

  bool holds(const std::string& key) const { return propositions.count(key) != 0; }

  friend bool operator==(const Event&, const Event&) = default;
};

/// Non-empty sequence of events with non-decreasing, non-negative timestamps.
class Word {
public:
  /// Throws PreconditionError if the sequence is empty, has a negative
  /// timestamp or goes back in time.
  explicit Word(std::vector<Event> events);
  Word(std::initializer_list<Event> events) : Word(std::vector<Event>(events)) {}

  std::size_t size() const { return events_.size(); }
  const Event& operator[](std::size_t i) const { return events_[i]; }
  const std::vector<Event>& events() const { return events_; }

  /// The first `length` events. Throws PreconditionError for length 0.
  Word prefix(std::size_t length) const;

  friend bool operator==(const Word&, const Word&) = default;

private:
  std::vector<Event> events_;
};

struct OracleOptions {
  /// Lets the current event witness a prophecy (`i >= 0` instead of `i >= 1`).
  bool prophecy_includes_now = false;
};

/// Two-valued satisfaction `w |= f`. `f` must be sugar-free and must not
/// contain remote atoms, active prophecies or verdict leaves; otherwise
/// PreconditionError. Prophecy windows are measured from the first event.
bool sat(const Word& w, const Formula& f, OracleOptions options = {});

/// Same relation, but also accepts True, False, And, Implies, WeakNext,
/// Finally and Globally with their direct meaning.
bool sat_extended(const Word& w, const Formula& f, OracleOptions options = {});

/// Four-valued verdict of `f` on the finite word, obligations beyond the
/// last event pending. Same input restrictions as `sat`.
Verdict finite_verdict(const Word& w, const Formula& f, OracleOptions options = {});

/// finite_verdict with native sugar, as in sat_extended.
Verdict finite_verdict_extended(const Word& w, const Formula& f, OracleOptions options = {});

} // namespace tempoweave
