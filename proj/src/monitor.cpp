#include "tempoweave/monitor.hpp"

#include "tempoweave/error.hpp"

namespace tempoweave {

namespace {

using K = FormulaKind;

Formula marked_constant(bool value) { return Formula::constant(value).with_mark(true); }

Formula unroll(const Formula& f);

Formula mark_and_unroll(const Formula& f) { return unroll(mark_outermost(f)); }

Formula unroll(const Formula& f) {
  if (!f.marked()) {
    if (!is_boolean_operator(f.kind()))
      return f;
    if (f.arity() == 1)
      return f.with_children(unroll(f.child()));
    return f.with_children(unroll(f.left()), unroll(f.right()));
  }
  switch (f.kind()) {
  case K::Until: {
    const Formula rest = Formula::next(f.with_mark(false)).with_mark(true);
    return Formula::disjunction(mark_and_unroll(f.right()),
                                Formula::conjunction(mark_and_unroll(f.left()), rest));
  }
  case K::Finally: {
    const Formula rest = Formula::next(f.with_mark(false)).with_mark(true);
    return Formula::disjunction(mark_and_unroll(f.child()), rest);
  }
  case K::Globally: {
    const Formula rest = Formula::weak_next(f.with_mark(false)).with_mark(true);
    return Formula::conjunction(mark_and_unroll(f.child()), rest);
  }
  default:
    return f;
  }
}

template <typename Leaf>
Formula map_leaves(const Formula& f, const Leaf& leaf) {
  if (f.arity() == 0)
    return leaf(f);
  if (f.arity() == 1)
    return f.with_children(map_leaves(f.child(), leaf));
  return f.with_children(map_leaves(f.left(), leaf), map_leaves(f.right(), leaf));
}

// Like map_leaves but stops at temporal operators, which are handed to
// `node` whole.
template <typename Node>
Formula map_boolean_layer(const Formula& f, const Node& node) {
  if (!is_boolean_operator(f.kind()))
    return node(f);
  if (f.arity() == 1)
    return f.with_children(map_boolean_layer(f.child(), node));
  return f.with_children(map_boolean_layer(f.left(), node), map_boolean_layer(f.right(), node));
}

bool present(const Formula& prophecy, const Event& event) {
  return event.holds(prophecy.atom_ref().key()) != (prophecy.polarity() == Polarity::Negated);
}

std::optional<bool> constant_value(const Formula& f) {
  if (f.is(K::True))
    return true;
  if (f.is(K::False))
    return false;
  return std::nullopt;
}

// One bottom-up pass. Every rule yields a constant or an already simplified
// child, so a single pass reaches the fixpoint; `applied` counts rewrites.
Formula simplify_pass(const Formula& f, std::size_t& applied) {
  if (!is_boolean_operator(f.kind()))
    return f;
  if (f.is(K::Not)) {
    const Formula c = simplify_pass(f.child(), applied);
    if (auto v = constant_value(c)) {
      ++applied;
      return Formula::constant(!*v);
    }
    return f.with_children(c);
  }
  const Formula a = simplify_pass(f.left(), applied);
  const Formula b = simplify_pass(f.right(), applied);
  const auto va = constant_value(a);
  const auto vb = constant_value(b);
  if (!va && !vb)
    return f.with_children(a, b);
  ++applied;
  switch (f.kind()) {
  case K::And:
    if (va)
      return *va ? b : a;
    return *vb ? a : b;
  case K::Or:
    if (va)
      return *va ? a : b;
    return *vb ? b : a;
  case K::Implies:
    if (va)
      return *va ? b : Formula::constant(true);
    return *vb ? b : simplify_pass(Formula::negation(a), applied);
  default:
    throw InternalError("simplify: unexpected boolean operator");
  }
}

} // namespace

void MonitorState::advance(const Event& event, const StepResult& result) {
  obligation = result.next_obligation;
  last_time = event.timestamp;
  history.push_back({event.timestamp, result.verdict});
}

Verdict MonitorState::step(const Event& event, MonitorOptions options) {
  const StepResult result = monitor_step(*this, event, options);
  advance(event, result);
  return result.verdict;
}

std::optional<Verdict> MonitorState::last_verdict() const {
  if (history.empty())
    return std::nullopt;
  return history.back().verdict;
}

bool MonitorState::is_final() const {
  const auto v = last_verdict();
  return v && tempoweave::is_final(*v);
}

StepResult monitor_step(const MonitorState& state, const Event& event, MonitorOptions options) {
  Time delta;
  if (state.last_time) {
    if (event.timestamp < *state.last_time)
      throw TimeRegressionError("event at " + event.timestamp.to_string() +
                                " precedes the previous event at " + state.last_time->to_string());
    delta = event.timestamp - *state.last_time;
  }
  return monitor_step(state.obligation, delta, event, options);
}

StepResult monitor_step(const Formula& obligation, Time delta, const Event& event,
                        MonitorOptions options) {
  Formula tree = mark_outermost(obligation);
  tree = unroll_marked(tree);
  tree = shift_prophecies(tree, delta);
  tree = evaluate_atoms(tree, event);
  tree = evaluate_prophecies(tree, event, options);
  tree = activate_prophecies(tree);
  return {verdict_collapse(tree), obligation_rewrite(tree)};
}

Formula mark_outermost(const Formula& tree) {
  if (!is_boolean_operator(tree.kind()))
    return tree.with_mark(true);
  if (tree.arity() == 1)
    return tree.with_mark(false).with_children(mark_outermost(tree.child()));
  return tree.with_mark(false).with_children(mark_outermost(tree.left()), mark_outermost(tree.right()));
}

Formula unroll_marked(const Formula& tree) { return unroll(tree); }

Formula shift_prophecies(const Formula& tree, Time delta) {
  if (delta.is_negative())
    throw PreconditionError("prophecy shift by negative delta " + delta.to_string());
  if (delta == Time{})
    return tree;
  return map_leaves(tree, [&](const Formula& f) {
    if (!f.is(K::ActiveProphecy))
      return f;
    return f.with_bounds(f.lower() - delta, f.upper() - delta);
  });
}

Formula evaluate_atoms(const Formula& tree, const Event& event) {
  return map_leaves(tree, [&](const Formula& f) {
    if (!f.marked() || !(f.is(K::Atom) || f.is(K::RemoteAtom)))
      return f;
    return marked_constant(event.holds(f.atom_ref().key()));
  });
}

Formula evaluate_prophecies(const Formula& tree, const Event& event, MonitorOptions options) {
  return map_leaves(tree, [&](const Formula& f) {
    if (!f.marked())
      return f;
    if (f.is(K::Prophecy)) {
      if (options.prophecy_includes_now && present(f, event) && f.lower() <= Time{})
        return marked_constant(true);
      return f;
    }
    if (!f.is(K::ActiveProphecy))
      return f;
    const Time zero;
    if (present(f, event)) {
      if (f.lower() <= zero && zero <= f.upper())
        return marked_constant(true);
      if (f.lower() > zero)
        return marked_constant(false);
    }
    if (f.upper() < zero)
      return marked_constant(false);
    return f.with_mark(false);
  });
}

Formula activate_prophecies(const Formula& tree) {
  return map_leaves(tree, [](const Formula& f) {
    if (!f.marked() || !f.is(K::Prophecy))
      return f;
    return f.activated().with_mark(false);
  });
}

Verdict verdict_collapse(const Formula& tree) {
  switch (tree.kind()) {
  case K::True:
    return Verdict::True;
  case K::False:
    return Verdict::False;
  case K::VerdictLeaf:
    return tree.verdict();
  case K::Next:
  case K::ActiveProphecy:
    return Verdict::CurrentlyFalse;
  case K::WeakNext:
    return Verdict::CurrentlyTrue;
  case K::Not:
    return complement(verdict_collapse(tree.child()));
  case K::Or:
    return join(verdict_collapse(tree.left()), verdict_collapse(tree.right()));
  case K::And:
    return meet(verdict_collapse(tree.left()), verdict_collapse(tree.right()));
  case K::Implies:
    return join(complement(verdict_collapse(tree.left())), verdict_collapse(tree.right()));
  default:
    throw InternalError("verdict_collapse: residual " + std::string(kind_name(tree.kind())) +
                        " node after the pipeline");
  }
}

Formula obligation_rewrite(const Formula& tree) {
  const Formula stripped = map_boolean_layer(tree, [](const Formula& f) {
    if (f.is(K::Next) || f.is(K::WeakNext))
      return f.child();
    return f;
  });
  return clear_marks(simplify(stripped));
}

Formula simplify(const Formula& tree) {
  const std::size_t bound = 10 * tree.size();
  std::size_t applied = 0;
  Formula current = tree;
  while (true) {
    std::size_t pass = 0;
    current = simplify_pass(current, pass);
    applied += pass;
    if (applied > bound)
      throw InternalError("simplify: rule application bound exceeded");
    if (pass == 0)
      return current;
  }
}

Formula clear_marks(const Formula& tree) {
  Formula f = tree.with_mark(false);
  if (f.arity() == 1)
    return f.with_children(clear_marks(f.child()));
  if (f.arity() == 2)
    return f.with_children(clear_marks(f.left()), clear_marks(f.right()));
  return f;
}

} // namespace tempoweave
