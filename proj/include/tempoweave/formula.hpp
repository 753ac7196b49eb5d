#pragma once

#include "tempoweave/time.hpp"
#include "tempoweave/verdict.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace tempoweave {

enum class FormulaKind : std::uint8_t {
  Atom,
  RemoteAtom,
  True,
  False,
  Not,
  Or,
  And,
  Implies,
  Next,
  WeakNext,
  Until,
  Finally,
  Globally,
  Prophecy,
  ActiveProphecy,
  VerdictLeaf,
};

std::string_view kind_name(FormulaKind k);

constexpr bool is_boolean_operator(FormulaKind k) {
  return k == FormulaKind::Not || k == FormulaKind::Or || k == FormulaKind::And ||
         k == FormulaKind::Implies;
}

constexpr bool is_temporal_operator(FormulaKind k) {
  return k == FormulaKind::Next || k == FormulaKind::WeakNext || k == FormulaKind::Until ||
         k == FormulaKind::Finally || k == FormulaKind::Globally || k == FormulaKind::Prophecy ||
         k == FormulaKind::ActiveProphecy;
}

constexpr bool is_prophecy(FormulaKind k) {
  return k == FormulaKind::Prophecy || k == FormulaKind::ActiveProphecy;
}

enum class Polarity : std::uint8_t { Positive, Negated };

/// A proposition reference. `agent` is empty for local propositions and holds
/// the remote agent name for `@B.p`.
struct AtomRef {
  std::string agent;
  std::string name;

  bool is_remote() const { return !agent.empty(); }
  /// Key under which the proposition appears in an Event: `p` or `@B.p`.
  std::string key() const { return is_remote() ? "@" + agent + "." + name : name; }

  friend bool operator==(const AtomRef&, const AtomRef&) = default;
};

class Formula;

namespace detail {
struct FormulaNode;
}

/// Immutable TLTL syntax tree with shared subtrees.
///
/// Every node carries the rewriting mark used by the monitor pipeline. Marks
/// are ignored by operator== and never printed.
class Formula {
public:
  /// The constant `true`.
  Formula();

  static Formula atom(std::string name);
  static Formula remote_atom(std::string agent, std::string name);
  static Formula atom(AtomRef ref);
  static Formula constant(bool value);
  static Formula negation(Formula f);
  static Formula disjunction(Formula a, Formula b);
  static Formula conjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);
  static Formula next(Formula f);
  static Formula weak_next(Formula f);
  static Formula until(Formula a, Formula b);
  static Formula finally(Formula f);
  static Formula globally(Formula f);
  /// Throws PreconditionError unless 0 <= lower < upper.
  static Formula prophecy(Time lower, Time upper, AtomRef prop, Polarity polarity = Polarity::Positive);
  /// Activated prophecy; bounds are relative to "now" and may be negative.
  static Formula active_prophecy(Time lower, Time upper, AtomRef prop,
                                 Polarity polarity = Polarity::Positive);
  static Formula verdict_leaf(Verdict v);

  FormulaKind kind() const;
  bool marked() const;
  std::size_t arity() const;
  const Formula& child(std::size_t i = 0) const;
  const Formula& left() const { return child(0); }
  const Formula& right() const { return child(1); }

  /// Atom, RemoteAtom and both prophecy kinds.
  const AtomRef& atom_ref() const;
  Time lower() const;
  Time upper() const;
  Polarity polarity() const;
  Verdict verdict() const;

  Formula with_mark(bool mark) const;
  /// Same node kind and payload with new children (and the current mark).
  Formula with_children(const Formula& a) const;
  Formula with_children(const Formula& a, const Formula& b) const;
  Formula with_bounds(Time lower, Time upper) const;
  /// Same bounds, proposition, polarity and mark; kind switched to ActiveProphecy.
  Formula activated() const;

  bool is(FormulaKind k) const { return kind() == k; }
  bool is_constant() const { return is(FormulaKind::True) || is(FormulaKind::False); }

  /// Pointer identity; cheap test used by the rewriting passes.
  bool same_node(const Formula& other) const { return node_ == other.node_; }

  std::size_t size() const;
  std::size_t depth() const;
  /// True if any node in the tree carries a mark.
  bool any_marked() const;

  /// Structural equality, marks excluded.
  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

private:
  friend struct detail::FormulaNode;

  explicit Formula(std::shared_ptr<const detail::FormulaNode> node) : node_(std::move(node)) {}
  static Formula make_unary(FormulaKind kind, Formula f);
  static Formula make_binary(FormulaKind kind, Formula a, Formula b);

  std::shared_ptr<const detail::FormulaNode> node_;
};

/// `@agent: body`
struct Property {
  std::string agent;
  Formula body;

  friend bool operator==(const Property&, const Property&) = default;
};

/// Rewrites Implies, And, True, False, WeakNext, Finally and Globally into the
/// core operators (atoms, Not, Or, Next, Until, prophecies). `true` becomes
/// `a | !a` for the first atom of the formula (`p` if the formula has none).
Formula expand_sugar(const Formula& f);

/// True if the tree only uses Atom, RemoteAtom, Not, Or, Next, Until and
/// Prophecy nodes.
bool is_core_formula(const Formula& f);

} // namespace tempoweave
