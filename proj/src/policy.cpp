#include "tempoweave/policy.hpp"

#include "tempoweave/detail/scanner.hpp"
#include "tempoweave/error.hpp"

#include <algorithm>
#include <sstream>

namespace tempoweave {

std::vector<ScheduleEntry> parse_schedule(std::string_view text) {
  detail::TokenCursor c(text);
  std::vector<ScheduleEntry> out;
  while (!c.at_end()) {
    c.word("at");
    const auto& step_token = c.peek();
    ScheduleEntry e{c.integer("step number"), {}};
    if (e.step == 0)
      c.fail_at(step_token, "steps are numbered from 1");
    if (!out.empty() && e.step <= out.back().step)
      c.fail_at(step_token, "schedule steps must be strictly increasing");
    c.punct(":");
    EnvAction& a = e.action;
    if (c.is_word("noop")) {
      c.take();
    } else if (c.is_word("insert")) {
      c.take();
      a.kind = EnvAction::Kind::Insert;
      if (c.is_punct("!")) {
        c.take();
        a.kind = EnvAction::Kind::InsertEffective;
      }
      a.name = c.ident("input kind");
      c.word("into");
      a.agent = c.ident("agent name");
    } else if (c.is_word("delete")) {
      c.take();
      a.kind = EnvAction::Kind::Delete;
      a.name = c.ident("input kind");
      c.word("from");
      a.agent = c.ident("agent name");
    } else if (c.is_word("receive")) {
      c.take();
      a.kind = EnvAction::Kind::Receive;
      a.name = c.ident("message kind");
      c.word("from");
      a.sender = c.ident("sender agent");
      c.word("at");
      a.agent = c.ident("recipient agent");
    } else {
      c.fail("expected an action (insert, insert!, delete, receive, noop)");
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::string print_schedule(const std::vector<ScheduleEntry>& schedule) {
  std::ostringstream out;
  for (const auto& e : schedule) {
    out << "at " << e.step << ": ";
    const EnvAction& a = e.action;
    switch (a.kind) {
    case EnvAction::Kind::Noop:
      out << "noop";
      break;
    case EnvAction::Kind::Insert:
      out << "insert " << a.name << " into " << a.agent;
      break;
    case EnvAction::Kind::InsertEffective:
      out << "insert! " << a.name << " into " << a.agent;
      break;
    case EnvAction::Kind::Delete:
      out << "delete " << a.name << " from " << a.agent;
      break;
    case EnvAction::Kind::Receive:
      out << "receive " << a.name << " from " << a.sender << " at " << a.agent;
      break;
    }
    out << "\n";
  }
  return out.str();
}

std::optional<RuleMatch> resolve_action(const Scenario& s, const Snapshot& snap, const EnvAction& a) {
  RuleName rule = RuleName::InsertInput;
  switch (a.kind) {
  case EnvAction::Kind::Noop:
    return std::nullopt;
  case EnvAction::Kind::Insert:
    rule = RuleName::InsertInput;
    break;
  case EnvAction::Kind::InsertEffective:
    rule = RuleName::InsertEffectiveInput;
    break;
  case EnvAction::Kind::Delete:
    rule = RuleName::DeleteInput;
    break;
  case EnvAction::Kind::Receive:
    for (const auto& m : snap.in_transit)
      if (m.kind == a.name && m.sender == a.sender && m.recipient == a.agent)
        return RuleMatch{RuleName::ReceiveMessage, m.recipient, {}, m.kind, m.id};
    throw PreconditionError("no " + a.name + " message from '" + a.sender + "' to '" + a.agent + "' is in transit");
  }
  const RuleMatch m{rule, a.agent, {}, a.name, 0};
  const auto matches = find_matches(s, rule, snap);
  if (std::find(matches.begin(), matches.end(), m) == matches.end())
    throw PreconditionError(describe(m) + " is not applicable in snapshot " + std::to_string(snap.seq));
  return m;
}

std::vector<RuleMatch> environmental_matches(const Scenario& s, const Snapshot& snap) {
  std::vector<RuleMatch> out;
  for (RuleName r : kEnvironmentalRules) {
    auto ms = find_matches(s, r, snap);
    out.insert(out.end(), ms.begin(), ms.end());
  }
  return out;
}

EnvironmentPolicy EnvironmentPolicy::scripted(std::vector<ScheduleEntry> schedule, bool strict) {
  for (std::size_t i = 1; i < schedule.size(); ++i)
    if (schedule[i].step <= schedule[i - 1].step)
      throw PreconditionError("schedule steps must be strictly increasing");
  EnvironmentPolicy p;
  p.mode_ = Mode::Scripted;
  p.schedule_ = std::move(schedule);
  p.strict_ = strict;
  return p;
}

EnvironmentPolicy EnvironmentPolicy::seeded(std::uint64_t seed) {
  EnvironmentPolicy p;
  p.mode_ = Mode::Seeded;
  p.rng_.seed(seed);
  return p;
}

EnvironmentPolicy EnvironmentPolicy::interactive(Chooser chooser) {
  EnvironmentPolicy p;
  p.mode_ = Mode::Interactive;
  p.chooser_ = std::move(chooser);
  return p;
}

std::optional<RuleMatch> EnvironmentPolicy::choose(const Scenario& s, const Snapshot& snap, std::uint64_t step) {
  switch (mode_) {
  case Mode::Scripted: {
    auto it = std::lower_bound(schedule_.begin(), schedule_.end(), step,
                               [](const ScheduleEntry& e, std::uint64_t k) { return e.step < k; });
    if (it == schedule_.end() || it->step != step) {
      if (strict_)
        throw PolicyExhaustedError("schedule has no entry for step " + std::to_string(step));
      return std::nullopt;
    }
    return resolve_action(s, snap, it->action);
  }
  case Mode::Seeded: {
    const auto matches = environmental_matches(s, snap);
    std::uniform_int_distribution<std::size_t> pick(0, matches.size());
    const std::size_t i = pick(rng_);
    if (i == matches.size())
      return std::nullopt;
    return matches[i];
  }
  case Mode::Interactive: {
    const auto matches = environmental_matches(s, snap);
    const auto i = chooser_(snap, matches);
    if (!i)
      return std::nullopt;
    if (*i >= matches.size())
      throw PreconditionError("choice " + std::to_string(*i) + " out of range");
    return matches[*i];
  }
  }
  return std::nullopt;
}

} // namespace tempoweave
