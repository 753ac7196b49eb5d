#pragma once

#include "tempoweave/scenario.hpp"
#include "tempoweave/snapshot.hpp"

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tempoweave {

enum class TemplateKind {
  /// task_current(agent, task)
  TaskCurrent,
  /// input_present(agent, input kind)
  InputPresent,
  /// message_held(agent, message kind)
  MessageHeld,
  /// message_in_transit(message kind, sender, recipient)
  MessageInTransit,
  /// agent_active(agent)
  AgentActive,
};

std::string_view template_name(TemplateKind k);
std::size_t template_arity(TemplateKind k);

/// Agent arguments may be the word `self`, which stands for the agent whose
/// monitor evaluates the proposition.
inline constexpr std::string_view kSelfAgent = "self";

struct BindingTemplate {
  TemplateKind kind;
  std::vector<std::string> args;

  friend bool operator==(const BindingTemplate&, const BindingTemplate&) = default;
};

struct Binding {
  std::string proposition;
  BindingTemplate predicate;

  friend bool operator==(const Binding&, const Binding&) = default;
};

class BindingSet {
public:
  BindingSet() = default;
  /// Throws ResolutionError on a duplicate proposition.
  explicit BindingSet(std::vector<Binding> bindings);

  const std::vector<Binding>& bindings() const { return bindings_; }
  const Binding* find(std::string_view proposition) const;
  bool empty() const { return bindings_.empty(); }

  friend bool operator==(const BindingSet&, const BindingSet&) = default;

private:
  std::vector<Binding> bindings_;
};

/// Lines `prop NAME = TEMPLATE(arg, ...)`; `#` starts a comment.
BindingSet parse_bindings(std::string_view text);
std::string print_bindings(const BindingSet& b);

/// Names that bindings may refer to.
struct NameIndex {
  std::set<std::string> agents;
  std::map<std::string, std::set<std::string>> tasks;
  std::set<std::string> input_kinds;
  std::set<std::string> message_kinds;

  static NameIndex from(const Scenario& s);
};

/// Throws ResolutionError naming the first argument that does not resolve.
void validate_bindings(const BindingSet& b, const NameIndex& names);

/// Truth of the template in the snapshot; `self` is substituted by `self_agent`.
bool eval_binding(const BindingTemplate& t, const Snapshot& snap, std::string_view self_agent = {});

} // namespace tempoweave
