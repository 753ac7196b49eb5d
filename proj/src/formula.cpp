#include "tempoweave/formula.hpp"

#include "tempoweave/error.hpp"

#include <algorithm>
#include <optional>

namespace tempoweave {

namespace detail {

struct FormulaNode {
  FormulaKind kind = FormulaKind::True;
  bool mark = false;
  std::uint8_t arity = 0;
  Polarity polarity = Polarity::Positive;
  Verdict verdict = Verdict::True;
  Time lower;
  Time upper;
  AtomRef atom;
  std::array<Formula, 2> kids{Formula{nullptr}, Formula{nullptr}};
};

} // namespace detail

using detail::FormulaNode;

namespace {

std::shared_ptr<const FormulaNode> make_node(FormulaNode n) {
  return std::make_shared<const FormulaNode>(std::move(n));
}

const std::shared_ptr<const FormulaNode>& true_node() {
  static const auto node = make_node(FormulaNode{});
  return node;
}

} // namespace

std::string_view kind_name(FormulaKind k) {
  switch (k) {
  case FormulaKind::Atom:
    return "Atom";
  case FormulaKind::RemoteAtom:
    return "RemoteAtom";
  case FormulaKind::True:
    return "True";
  case FormulaKind::False:
    return "False";
  case FormulaKind::Not:
    return "Not";
  case FormulaKind::Or:
    return "Or";
  case FormulaKind::And:
    return "And";
  case FormulaKind::Implies:
    return "Implies";
  case FormulaKind::Next:
    return "Next";
  case FormulaKind::WeakNext:
    return "WeakNext";
  case FormulaKind::Until:
    return "Until";
  case FormulaKind::Finally:
    return "Finally";
  case FormulaKind::Globally:
    return "Globally";
  case FormulaKind::Prophecy:
    return "Prophecy";
  case FormulaKind::ActiveProphecy:
    return "ActiveProphecy";
  case FormulaKind::VerdictLeaf:
    return "VerdictLeaf";
  }
  return "?";
}

Formula::Formula() : node_(true_node()) {}

Formula Formula::atom(std::string name) { return atom(AtomRef{{}, std::move(name)}); }

Formula Formula::remote_atom(std::string agent, std::string name) {
  return atom(AtomRef{std::move(agent), std::move(name)});
}

Formula Formula::atom(AtomRef ref) {
  FormulaNode n;
  n.kind = ref.is_remote() ? FormulaKind::RemoteAtom : FormulaKind::Atom;
  n.atom = std::move(ref);
  return Formula(make_node(std::move(n)));
}

Formula Formula::constant(bool value) {
  if (value)
    return Formula();
  static const auto false_node = [] {
    FormulaNode n;
    n.kind = FormulaKind::False;
    return make_node(std::move(n));
  }();
  return Formula(false_node);
}

Formula Formula::negation(Formula f) { return make_unary(FormulaKind::Not, std::move(f)); }
Formula Formula::disjunction(Formula a, Formula b) {
  return make_binary(FormulaKind::Or, std::move(a), std::move(b));
}
Formula Formula::conjunction(Formula a, Formula b) {
  return make_binary(FormulaKind::And, std::move(a), std::move(b));
}
Formula Formula::implication(Formula a, Formula b) {
  return make_binary(FormulaKind::Implies, std::move(a), std::move(b));
}
Formula Formula::next(Formula f) { return make_unary(FormulaKind::Next, std::move(f)); }
Formula Formula::weak_next(Formula f) { return make_unary(FormulaKind::WeakNext, std::move(f)); }
Formula Formula::until(Formula a, Formula b) {
  return make_binary(FormulaKind::Until, std::move(a), std::move(b));
}
Formula Formula::finally(Formula f) { return make_unary(FormulaKind::Finally, std::move(f)); }
Formula Formula::globally(Formula f) { return make_unary(FormulaKind::Globally, std::move(f)); }

Formula Formula::prophecy(Time lower, Time upper, AtomRef prop, Polarity polarity) {
  if (lower.is_negative())
    throw PreconditionError("prophecy lower bound must be non-negative, got " + lower.to_string());
  if (!(lower < upper))
    throw PreconditionError("prophecy bounds must satisfy lower < upper, got [" +
                            lower.to_string() + "," + upper.to_string() + "]");
  FormulaNode n;
  n.kind = FormulaKind::Prophecy;
  n.lower = lower;
  n.upper = upper;
  n.atom = std::move(prop);
  n.polarity = polarity;
  return Formula(make_node(std::move(n)));
}

Formula Formula::active_prophecy(Time lower, Time upper, AtomRef prop, Polarity polarity) {
  FormulaNode n;
  n.kind = FormulaKind::ActiveProphecy;
  n.lower = lower;
  n.upper = upper;
  n.atom = std::move(prop);
  n.polarity = polarity;
  return Formula(make_node(std::move(n)));
}

Formula Formula::verdict_leaf(Verdict v) {
  FormulaNode n;
  n.kind = FormulaKind::VerdictLeaf;
  n.verdict = v;
  return Formula(make_node(std::move(n)));
}

Formula Formula::make_unary(FormulaKind kind, Formula f) {
  FormulaNode n;
  n.kind = kind;
  n.arity = 1;
  n.kids[0] = std::move(f);
  return Formula(make_node(std::move(n)));
}

Formula Formula::make_binary(FormulaKind kind, Formula a, Formula b) {
  FormulaNode n;
  n.kind = kind;
  n.arity = 2;
  n.kids[0] = std::move(a);
  n.kids[1] = std::move(b);
  return Formula(make_node(std::move(n)));
}

FormulaKind Formula::kind() const { return node_->kind; }
bool Formula::marked() const { return node_->mark; }
std::size_t Formula::arity() const { return node_->arity; }

const Formula& Formula::child(std::size_t i) const {
  if (i >= node_->arity)
    throw InternalError("child index out of range for " + std::string(kind_name(node_->kind)));
  return node_->kids[i];
}

const AtomRef& Formula::atom_ref() const { return node_->atom; }
Time Formula::lower() const { return node_->lower; }
Time Formula::upper() const { return node_->upper; }
Polarity Formula::polarity() const { return node_->polarity; }
Verdict Formula::verdict() const { return node_->verdict; }

Formula Formula::with_mark(bool mark) const {
  if (node_->mark == mark)
    return *this;
  FormulaNode n = *node_;
  n.mark = mark;
  return Formula(make_node(std::move(n)));
}

Formula Formula::with_children(const Formula& a) const {
  if (node_->arity != 1)
    throw InternalError("with_children(a) on " + std::string(kind_name(node_->kind)));
  if (a.same_node(node_->kids[0]))
    return *this;
  FormulaNode n = *node_;
  n.kids[0] = a;
  return Formula(make_node(std::move(n)));
}

Formula Formula::with_children(const Formula& a, const Formula& b) const {
  if (node_->arity != 2)
    throw InternalError("with_children(a, b) on " + std::string(kind_name(node_->kind)));
  if (a.same_node(node_->kids[0]) && b.same_node(node_->kids[1]))
    return *this;
  FormulaNode n = *node_;
  n.kids[0] = a;
  n.kids[1] = b;
  return Formula(make_node(std::move(n)));
}

Formula Formula::with_bounds(Time lower, Time upper) const {
  if (!is_prophecy(node_->kind))
    throw InternalError("with_bounds on " + std::string(kind_name(node_->kind)));
  if (node_->lower == lower && node_->upper == upper)
    return *this;
  FormulaNode n = *node_;
  n.lower = lower;
  n.upper = upper;
  return Formula(make_node(std::move(n)));
}

Formula Formula::activated() const {
  if (node_->kind != FormulaKind::Prophecy)
    throw InternalError("activated() on " + std::string(kind_name(node_->kind)));
  FormulaNode n = *node_;
  n.kind = FormulaKind::ActiveProphecy;
  return Formula(make_node(std::move(n)));
}

std::size_t Formula::size() const {
  std::size_t total = 1;
  for (std::size_t i = 0; i < arity(); ++i)
    total += node_->kids[i].size();
  return total;
}

std::size_t Formula::depth() const {
  std::size_t deepest = 0;
  for (std::size_t i = 0; i < arity(); ++i)
    deepest = std::max(deepest, node_->kids[i].depth());
  return deepest + 1;
}

bool Formula::any_marked() const {
  if (node_->mark)
    return true;
  for (std::size_t i = 0; i < arity(); ++i)
    if (node_->kids[i].any_marked())
      return true;
  return false;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_)
    return true;
  const FormulaNode& x = *a.node_;
  const FormulaNode& y = *b.node_;
  if (x.kind != y.kind || x.arity != y.arity)
    return false;
  switch (x.kind) {
  case FormulaKind::Atom:
  case FormulaKind::RemoteAtom:
    return x.atom == y.atom;
  case FormulaKind::Prophecy:
  case FormulaKind::ActiveProphecy:
    return x.atom == y.atom && x.lower == y.lower && x.upper == y.upper && x.polarity == y.polarity;
  case FormulaKind::VerdictLeaf:
    return x.verdict == y.verdict;
  default:
    break;
  }
  for (std::size_t i = 0; i < x.arity; ++i)
    if (!(x.kids[i] == y.kids[i]))
      return false;
  return true;
}

namespace {

std::optional<AtomRef> first_atom(const Formula& f) {
  switch (f.kind()) {
  case FormulaKind::Atom:
  case FormulaKind::RemoteAtom:
  case FormulaKind::Prophecy:
  case FormulaKind::ActiveProphecy:
    return f.atom_ref();
  default:
    break;
  }
  for (std::size_t i = 0; i < f.arity(); ++i)
    if (auto found = first_atom(f.child(i)))
      return found;
  return std::nullopt;
}

Formula expand(const Formula& f, const Formula& tautology) {
  using K = FormulaKind;
  switch (f.kind()) {
  case K::Atom:
  case K::RemoteAtom:
  case K::Prophecy:
  case K::ActiveProphecy:
  case K::VerdictLeaf:
    return f.with_mark(false);
  case K::True:
    return tautology;
  case K::False:
    return Formula::negation(tautology);
  case K::Not:
    return Formula::negation(expand(f.child(), tautology));
  case K::Or:
    return Formula::disjunction(expand(f.left(), tautology), expand(f.right(), tautology));
  case K::And:
    return Formula::negation(Formula::disjunction(Formula::negation(expand(f.left(), tautology)),
                                                  Formula::negation(expand(f.right(), tautology))));
  case K::Implies:
    return Formula::disjunction(Formula::negation(expand(f.left(), tautology)),
                                expand(f.right(), tautology));
  case K::Next:
    return Formula::next(expand(f.child(), tautology));
  case K::WeakNext:
    return Formula::negation(Formula::next(Formula::negation(expand(f.child(), tautology))));
  case K::Until:
    return Formula::until(expand(f.left(), tautology), expand(f.right(), tautology));
  case K::Finally:
    return Formula::until(tautology, expand(f.child(), tautology));
  case K::Globally:
    return Formula::negation(
        Formula::until(tautology, Formula::negation(expand(f.child(), tautology))));
  }
  throw InternalError("expand_sugar: unhandled node kind");
}

} // namespace

Formula expand_sugar(const Formula& f) {
  const AtomRef witness = first_atom(f).value_or(AtomRef{{}, "p"});
  const Formula a = Formula::atom(AtomRef{witness.agent, witness.name});
  const Formula tautology = Formula::disjunction(a, Formula::negation(a));
  return expand(f, tautology);
}

bool is_core_formula(const Formula& f) {
  switch (f.kind()) {
  case FormulaKind::Atom:
  case FormulaKind::RemoteAtom:
  case FormulaKind::Prophecy:
    return true;
  case FormulaKind::Not:
  case FormulaKind::Or:
  case FormulaKind::Next:
  case FormulaKind::Until:
    for (std::size_t i = 0; i < f.arity(); ++i)
      if (!is_core_formula(f.child(i)))
        return false;
    return true;
  default:
    return false;
  }
}

} // namespace tempoweave
