#include "tempoweave/oracle.hpp"

#include "tempoweave/error.hpp"

namespace tempoweave {

Word::Word(std::vector<Event> events) : events_(std::move(events)) {
  if (events_.empty())
    throw PreconditionError("a word needs at least one event");
  for (std::size_t i = 0; i < events_.size(); ++i) {
    if (events_[i].timestamp.is_negative())
      throw PreconditionError("negative timestamp " + events_[i].timestamp.to_string() +
                              " at event " + std::to_string(i));
    if (i > 0 && events_[i].timestamp < events_[i - 1].timestamp)
      throw PreconditionError("timestamps decrease at event " + std::to_string(i));
  }
}

Word Word::prefix(std::size_t length) const {
  if (length == 0 || length > events_.size())
    throw PreconditionError("prefix length " + std::to_string(length) + " out of range");
  return Word(std::vector<Event>(events_.begin(), events_.begin() + static_cast<std::ptrdiff_t>(length)));
}

namespace {

class Evaluator {
public:
  Evaluator(const Word& w, OracleOptions options, bool sugar)
      : w_(w), n_(w.size()), options_(options), sugar_(sugar) {}

  bool sat(std::size_t i, const Formula& f) const {
    using K = FormulaKind;
    switch (f.kind()) {
    case K::Atom:
      return w_[i].holds(f.atom_ref().name);
    case K::Not:
      return !sat(i, f.child());
    case K::Or:
      return sat(i, f.left()) || sat(i, f.right());
    case K::Next:
      return i + 1 < n_ && sat(i + 1, f.child());
    case K::Until:
      for (std::size_t k = i; k < n_; ++k) {
        bool prefix_holds = true;
        for (std::size_t j = i; j < k && prefix_holds; ++j)
          prefix_holds = sat(j, f.left());
        if (prefix_holds && sat(k, f.right()))
          return true;
      }
      return false;
    case K::Prophecy:
      return prophecy_clause(i, f);
    default:
      break;
    }
    require_sugar(f);
    switch (f.kind()) {
    case K::True:
      return true;
    case K::False:
      return false;
    case K::And:
      return sat(i, f.left()) && sat(i, f.right());
    case K::Implies:
      return !sat(i, f.left()) || sat(i, f.right());
    case K::WeakNext:
      return i + 1 >= n_ || sat(i + 1, f.child());
    case K::Finally:
      for (std::size_t k = i; k < n_; ++k)
        if (sat(k, f.child()))
          return true;
      return false;
    case K::Globally:
      for (std::size_t k = i; k < n_; ++k)
        if (!sat(k, f.child()))
          return false;
      return true;
    default:
      throw InternalError("oracle: unreachable node kind");
    }
  }

  Verdict verdict(std::size_t i, const Formula& f) const {
    using K = FormulaKind;
    switch (f.kind()) {
    case K::Atom:
      return w_[i].holds(f.atom_ref().name) ? Verdict::True : Verdict::False;
    case K::Not:
      return complement(verdict(i, f.child()));
    case K::Or:
      return join(verdict(i, f.left()), verdict(i, f.right()));
    case K::Next:
      return i + 1 < n_ ? verdict(i + 1, f.child()) : Verdict::CurrentlyFalse;
    case K::Until:
      return join(verdict(i, f.right()),
                  meet(verdict(i, f.left()), i + 1 < n_ ? verdict(i + 1, f) : Verdict::CurrentlyFalse));
    case K::Prophecy:
      return prophecy(i, f);
    default:
      break;
    }
    require_sugar(f);
    switch (f.kind()) {
    case K::True:
      return Verdict::True;
    case K::False:
      return Verdict::False;
    case K::And:
      return meet(verdict(i, f.left()), verdict(i, f.right()));
    case K::Implies:
      return join(complement(verdict(i, f.left())), verdict(i, f.right()));
    case K::WeakNext:
      return i + 1 < n_ ? verdict(i + 1, f.child()) : Verdict::CurrentlyTrue;
    case K::Finally:
      return join(verdict(i, f.child()), i + 1 < n_ ? verdict(i + 1, f) : Verdict::CurrentlyFalse);
    case K::Globally:
      return meet(verdict(i, f.child()), i + 1 < n_ ? verdict(i + 1, f) : Verdict::CurrentlyTrue);
    default:
      throw InternalError("oracle: unreachable node kind");
    }
  }

private:
  void require_sugar(const Formula& f) const {
    switch (f.kind()) {
    case FormulaKind::RemoteAtom:
    case FormulaKind::ActiveProphecy:
    case FormulaKind::VerdictLeaf:
      throw PreconditionError("oracle does not accept " + std::string(kind_name(f.kind())) + " nodes");
    default:
      break;
    }
    if (!sugar_)
      throw PreconditionError("oracle expects a sugar-free formula, found " +
                              std::string(kind_name(f.kind())));
  }

  // Exists a witness k with no occurrence strictly between i and k.
  bool prophecy_clause(std::size_t i, const Formula& f) const {
    const std::string& name = f.atom_ref().name;
    const bool negated = f.polarity() == Polarity::Negated;
    auto present = [&](std::size_t k) { return w_[k].holds(name) != negated; };
    for (std::size_t k = options_.prophecy_includes_now ? i : i + 1; k < n_; ++k) {
      const Time rel = w_[k].timestamp - w_[i].timestamp;
      if (!present(k) || rel < f.lower() || f.upper() < rel)
        continue;
      bool clear = true;
      for (std::size_t j = i + 1; j < k && clear; ++j)
        clear = !present(j);
      if (clear)
        return true;
    }
    return false;
  }

  // The first occurrence after position i decides the prophecy. It holds iff
  // that occurrence lies inside the window relative to t_i. With the
  // includes-now option, position i itself may witness at relative time 0.
  Verdict prophecy(std::size_t i, const Formula& f) const {
    const std::string& name = f.atom_ref().name;
    const bool negated = f.polarity() == Polarity::Negated;
    const Time t0 = w_[i].timestamp;
    if (options_.prophecy_includes_now && (w_[i].holds(name) != negated) && f.lower() <= Time{})
      return Verdict::True;
    for (std::size_t j = i + 1; j < n_; ++j) {
      const Time rel = w_[j].timestamp - t0;
      const bool present = w_[j].holds(name) != negated;
      if (present)
        return f.lower() <= rel && rel <= f.upper() ? Verdict::True : Verdict::False;
      if (rel > f.upper())
        return Verdict::False;
    }
    return Verdict::CurrentlyFalse;
  }

  const Word& w_;
  std::size_t n_;
  OracleOptions options_;
  bool sugar_;
};

} // namespace

bool sat(const Word& w, const Formula& f, OracleOptions options) {
  return Evaluator(w, options, false).sat(0, f);
}

bool sat_extended(const Word& w, const Formula& f, OracleOptions options) {
  return Evaluator(w, options, true).sat(0, f);
}

Verdict finite_verdict(const Word& w, const Formula& f, OracleOptions options) {
  return Evaluator(w, options, false).verdict(0, f);
}

Verdict finite_verdict_extended(const Word& w, const Formula& f, OracleOptions options) {
  return Evaluator(w, options, true).verdict(0, f);
}

} // namespace tempoweave
