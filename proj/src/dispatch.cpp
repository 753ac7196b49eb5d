#include "tempoweave/dispatch.hpp"

#include "tempoweave/error.hpp"

#include <exception>

namespace tempoweave {

namespace {

template <typename Visit>
void visit_atoms(const Formula& f, const Visit& visit) {
  if (f.is(FormulaKind::Atom) || f.is(FormulaKind::RemoteAtom) || is_prophecy(f.kind()))
    visit(f.atom_ref());
  for (std::size_t i = 0; i < f.arity(); ++i)
    visit_atoms(f.child(i), visit);
}

} // namespace

void validate_property(const Property& p, const BindingSet& b, const NameIndex& names) {
  if (!names.agents.count(p.agent))
    throw ResolutionError("property annotated with unknown agent '" + p.agent + "'");
  visit_atoms(p.body, [&](const AtomRef& ref) {
    if (ref.is_remote() && !names.agents.count(ref.agent))
      throw ResolutionError("remote proposition '" + ref.key() + "' names unknown agent '" + ref.agent + "'");
    if (!b.find(ref.name))
      throw ResolutionError("proposition '" + ref.name + "' has no binding");
  });
}

Event resolve_event(const Snapshot& snap, const Property& p, const BindingSet& b) {
  const AgentState& self = snap.agent(p.agent);
  if (!self.active)
    throw PreconditionError("agent '" + p.agent + "' is not active in snapshot " + std::to_string(snap.seq));
  Event e;
  e.timestamp = snap.clock;
  for (const auto& binding : b.bindings())
    if (eval_binding(binding.predicate, snap, p.agent))
      e.propositions.insert(binding.proposition);
  visit_atoms(p.body, [&](const AtomRef& ref) {
    const Binding* binding = b.find(ref.name);
    if (!binding)
      throw ResolutionError("proposition '" + ref.name + "' has no binding");
    if (ref.is_remote() && eval_binding(binding->predicate, snap, ref.agent))
      e.propositions.insert(ref.key());
  });
  return e;
}

std::vector<std::optional<Verdict>> dispatch(const Snapshot& snap, std::vector<MonitorState>& monitors,
                                             const BindingSet& b, MonitorOptions options, Execution execution) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(monitors.size());
  std::vector<std::optional<Verdict>> out(monitors.size());
  std::vector<std::exception_ptr> errors(monitors.size());
  auto step = [&](std::ptrdiff_t i) {
    MonitorState& m = monitors[static_cast<std::size_t>(i)];
    const AgentState* a = snap.find_agent(m.property.agent);
    if (!a || !a->active)
      return;
    try {
      out[static_cast<std::size_t>(i)] = m.step(resolve_event(snap, m.property, b), options);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  };
  if (execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic) if (n > 1)
    for (std::ptrdiff_t i = 0; i < n; ++i)
      step(i);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i)
      step(i);
  }
  for (const auto& e : errors)
    if (e)
      std::rethrow_exception(e);
  return out;
}

} // namespace tempoweave
