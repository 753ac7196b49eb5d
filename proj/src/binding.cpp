#include "tempoweave/binding.hpp"

#include "tempoweave/detail/scanner.hpp"
#include "tempoweave/error.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace tempoweave {

namespace {

constexpr std::array<TemplateKind, 5> kTemplates = {TemplateKind::TaskCurrent, TemplateKind::InputPresent,
                                                    TemplateKind::MessageHeld, TemplateKind::MessageInTransit,
                                                    TemplateKind::AgentActive};

enum class Arg { Agent, Task, InputKind, MessageKind };

std::vector<Arg> signature(TemplateKind k) {
  switch (k) {
  case TemplateKind::TaskCurrent:
    return {Arg::Agent, Arg::Task};
  case TemplateKind::InputPresent:
    return {Arg::Agent, Arg::InputKind};
  case TemplateKind::MessageHeld:
    return {Arg::Agent, Arg::MessageKind};
  case TemplateKind::MessageInTransit:
    return {Arg::MessageKind, Arg::Agent, Arg::Agent};
  case TemplateKind::AgentActive:
    return {Arg::Agent};
  }
  return {};
}

std::string_view resolve(std::string_view agent, std::string_view self) {
  return agent == kSelfAgent ? self : agent;
}

} // namespace

std::string_view template_name(TemplateKind k) {
  switch (k) {
  case TemplateKind::TaskCurrent:
    return "task_current";
  case TemplateKind::InputPresent:
    return "input_present";
  case TemplateKind::MessageHeld:
    return "message_held";
  case TemplateKind::MessageInTransit:
    return "message_in_transit";
  case TemplateKind::AgentActive:
    return "agent_active";
  }
  return "?";
}

std::size_t template_arity(TemplateKind k) { return signature(k).size(); }

BindingSet::BindingSet(std::vector<Binding> bindings) : bindings_(std::move(bindings)) {
  for (std::size_t i = 0; i < bindings_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (bindings_[j].proposition == bindings_[i].proposition)
        throw ResolutionError("duplicate binding for proposition '" + bindings_[i].proposition + "'");
    if (bindings_[i].predicate.args.size() != template_arity(bindings_[i].predicate.kind))
      throw ResolutionError("binding '" + bindings_[i].proposition + "' has the wrong number of arguments");
  }
}

const Binding* BindingSet::find(std::string_view proposition) const {
  for (const auto& b : bindings_)
    if (b.proposition == proposition)
      return &b;
  return nullptr;
}

BindingSet parse_bindings(std::string_view text) {
  detail::TokenCursor c(text);
  std::vector<Binding> out;
  while (!c.at_end()) {
    c.word("prop");
    Binding b;
    const auto& name_token = c.peek();
    b.proposition = c.ident("proposition name");
    for (const auto& prev : out)
      if (prev.proposition == b.proposition)
        c.fail_at(name_token, "duplicate binding for proposition '" + b.proposition + "'");
    c.punct("=");
    const auto& tmpl = c.peek();
    const std::string tname = c.ident("template name");
    auto kind = std::find_if(kTemplates.begin(), kTemplates.end(),
                             [&](TemplateKind k) { return template_name(k) == tname; });
    if (kind == kTemplates.end())
      c.fail_at(tmpl, "unknown template '" + tname +
                          "' (expected task_current, input_present, message_held, message_in_transit or "
                          "agent_active)");
    b.predicate.kind = *kind;
    c.punct("(");
    if (!c.is_punct(")")) {
      b.predicate.args.push_back(c.ident("template argument"));
      while (c.is_punct(",")) {
        c.take();
        b.predicate.args.push_back(c.ident("template argument"));
      }
    }
    c.punct(")");
    if (b.predicate.args.size() != template_arity(*kind))
      c.fail_at(tmpl, tname + " takes " + std::to_string(template_arity(*kind)) + " arguments, got " +
                          std::to_string(b.predicate.args.size()));
    out.push_back(std::move(b));
  }
  return BindingSet(std::move(out));
}

std::string print_bindings(const BindingSet& set) {
  std::ostringstream out;
  for (const auto& b : set.bindings()) {
    out << "prop " << b.proposition << " = " << template_name(b.predicate.kind) << "(";
    for (std::size_t i = 0; i < b.predicate.args.size(); ++i)
      out << (i ? ", " : "") << b.predicate.args[i];
    out << ")\n";
  }
  return out.str();
}

NameIndex NameIndex::from(const Scenario& s) {
  NameIndex n;
  for (const auto& a : s.agents) {
    n.agents.insert(a.name);
    auto& tasks = n.tasks[a.name];
    for (const auto& t : a.tasks)
      tasks.insert(t.id);
  }
  n.input_kinds.insert(s.input_kinds.begin(), s.input_kinds.end());
  n.message_kinds.insert(s.message_kinds.begin(), s.message_kinds.end());
  return n;
}

void validate_bindings(const BindingSet& set, const NameIndex& names) {
  for (const auto& b : set.bindings()) {
    const auto sig = signature(b.predicate.kind);
    const std::string where = "binding '" + b.proposition + "': ";
    for (std::size_t i = 0; i < sig.size(); ++i) {
      const std::string& arg = b.predicate.args[i];
      switch (sig[i]) {
      case Arg::Agent:
        if (arg != kSelfAgent && !names.agents.count(arg))
          throw ResolutionError(where + "unknown agent '" + arg + "'");
        break;
      case Arg::Task: {
        const std::string& agent = b.predicate.args[0];
        bool found = false;
        if (agent == kSelfAgent) {
          for (const auto& [_, tasks] : names.tasks)
            found = found || tasks.count(arg) != 0;
        } else if (auto it = names.tasks.find(agent); it != names.tasks.end()) {
          found = it->second.count(arg) != 0;
        }
        if (!found)
          throw ResolutionError(where + "unknown task '" + arg + "' of agent '" + agent + "'");
        break;
      }
      case Arg::InputKind:
        if (!names.input_kinds.count(arg))
          throw ResolutionError(where + "unknown input kind '" + arg + "'");
        break;
      case Arg::MessageKind:
        if (!names.message_kinds.count(arg))
          throw ResolutionError(where + "unknown message kind '" + arg + "'");
        break;
      }
    }
  }
}

bool eval_binding(const BindingTemplate& t, const Snapshot& snap, std::string_view self_agent) {
  const auto& args = t.args;
  switch (t.kind) {
  case TemplateKind::TaskCurrent: {
    const AgentState* a = snap.find_agent(resolve(args[0], self_agent));
    return a && a->task == args[1];
  }
  case TemplateKind::InputPresent: {
    const AgentState* a = snap.find_agent(resolve(args[0], self_agent));
    return a && a->holds_input(args[1]);
  }
  case TemplateKind::MessageHeld: {
    const AgentState* a = snap.find_agent(resolve(args[0], self_agent));
    return a && a->holds_message(args[1]);
  }
  case TemplateKind::MessageInTransit: {
    const auto sender = resolve(args[1], self_agent);
    const auto recipient = resolve(args[2], self_agent);
    return std::any_of(snap.in_transit.begin(), snap.in_transit.end(), [&](const Message& m) {
      return m.kind == args[0] && m.sender == sender && m.recipient == recipient;
    });
  }
  case TemplateKind::AgentActive: {
    const AgentState* a = snap.find_agent(resolve(args[0], self_agent));
    return a && a->active;
  }
  }
  return false;
}

} // namespace tempoweave
