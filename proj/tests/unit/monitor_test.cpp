#include "support.hpp"

#include "tempoweave/check.hpp"
#include "tempoweave/error.hpp"
#include "tempoweave/monitor.hpp"

#include <gtest/gtest.h>

#include <functional>

namespace {

using namespace tw_test;
namespace chk = tempoweave::check;

constexpr Verdict T = Verdict::True, Tc = Verdict::CurrentlyTrue, Fc = Verdict::CurrentlyFalse, F = Verdict::False;

const Formula True = Formula::constant(true);
const Formula False = Formula::constant(false);

Formula marked(const Formula& g) { return g.with_mark(true); }

Formula active(double lo, double hi, const char* prop = "p", Polarity pol = Polarity::Positive) {
  return Formula::active_prophecy(t(lo), t(hi), AtomRef{{}, prop}, pol);
}

bool contains(const Formula& g, const std::function<bool(const Formula&)>& pred) {
  if (pred(g))
    return true;
  for (std::size_t i = 0; i < g.arity(); ++i)
    if (contains(g.child(i), pred))
      return true;
  return false;
}

TEST(MarkOutermost, Atom) {
  const Formula m = mark_outermost(f("p"));
  EXPECT_TRUE(m.marked());
}

TEST(MarkOutermost, PushesThroughOr) {
  const Formula m = mark_outermost(f("(X p) | q"));
  EXPECT_FALSE(m.marked());
  EXPECT_TRUE(m.left().marked());
  EXPECT_TRUE(m.right().marked());
  EXPECT_FALSE(m.left().child().marked());
}

TEST(MarkOutermost, StopsAtTemporalOperator) {
  const Formula m = mark_outermost(f("G (p | X q)"));
  EXPECT_TRUE(m.marked());
  EXPECT_FALSE(m.child().marked());
  EXPECT_FALSE(m.child().left().marked());
}

TEST(UnrollMarked, Until) {
  const Formula u = unroll_marked(mark_outermost(f("p U q")));
  EXPECT_EQ(u, f("q | (p & X (p U q))"));
  EXPECT_TRUE(u.left().marked());
  EXPECT_TRUE(u.right().left().marked());
  EXPECT_TRUE(u.right().right().marked());
  EXPECT_FALSE(u.right().right().child().marked());
}

TEST(UnrollMarked, Globally) {
  const Formula u = unroll_marked(mark_outermost(f("G p")));
  EXPECT_EQ(u, f("p & WX G p"));
  EXPECT_TRUE(u.left().marked());
  EXPECT_TRUE(u.right().marked());
}

TEST(UnrollMarked, Finally) { EXPECT_EQ(unroll_marked(mark_outermost(f("F p"))), f("p | X F p")); }

TEST(UnrollMarked, NextUnchanged) {
  const Formula u = unroll_marked(mark_outermost(f("X p")));
  EXPECT_EQ(u, f("X p"));
  EXPECT_TRUE(u.marked());
}

TEST(ShiftProphecies, ActiveShifts) { EXPECT_EQ(shift_prophecies(active(0, 3), t(2)), active(-2, 1)); }

TEST(ShiftProphecies, InactiveUntouched) {
  EXPECT_EQ(shift_prophecies(f("within[0,3] p"), t(2)), f("within[0,3] p"));
}

TEST(ShiftProphecies, ZeroShift) { EXPECT_EQ(shift_prophecies(active(1, 3), t(0)), active(1, 3)); }

TEST(ShiftProphecies, NegativeDeltaRejected) {
  EXPECT_THROW(shift_prophecies(active(1, 3), t(-1)), PreconditionError);
}

TEST(ShiftProphecies, ReachesNestedNodes) {
  const Formula g = Formula::conjunction(active(0, 3), Formula::next(active(1, 2, "q")));
  EXPECT_EQ(shift_prophecies(g, t(1)), Formula::conjunction(active(-1, 2), Formula::next(active(0, 1, "q"))));
}

TEST(EvaluateAtoms, Examples) {
  const Formula a = evaluate_atoms(marked(f("p")), ev({"p"}, 0));
  EXPECT_EQ(a, True);
  EXPECT_TRUE(a.marked());
  EXPECT_EQ(evaluate_atoms(marked(f("q")), ev({"p"}, 0)), False);
  const Formula inside = mark_outermost(f("X p"));
  EXPECT_EQ(evaluate_atoms(inside, ev({"p"}, 0)), f("X p"));
}

TEST(EvaluateProphecies, Examples) {
  const Event withp = ev({"p"}, 0);
  const Event none = ev({}, 0);
  const Formula hit = evaluate_prophecies(marked(active(-1, 2)), withp);
  EXPECT_EQ(hit, True);
  EXPECT_TRUE(hit.marked());
  EXPECT_EQ(evaluate_prophecies(marked(active(1, 3)), withp), False);
  EXPECT_EQ(evaluate_prophecies(marked(active(-4, -1)), none), False);
  const Formula pending = evaluate_prophecies(marked(active(-1, 2)), none);
  EXPECT_EQ(pending, active(-1, 2));
  EXPECT_FALSE(pending.marked());
}

TEST(EvaluateProphecies, NegatedPolarity) {
  EXPECT_EQ(evaluate_prophecies(marked(active(-1, 2, "p", Polarity::Negated)), ev({}, 0)), True);
  EXPECT_EQ(evaluate_prophecies(marked(active(1, 2, "p", Polarity::Negated)), ev({}, 0)), False);
  EXPECT_EQ(evaluate_prophecies(marked(active(-1, 2, "p", Polarity::Negated)), ev({"p"}, 0)),
            active(-1, 2, "p", Polarity::Negated));
}

TEST(ActivateProphecies, Examples) {
  const Formula a = activate_prophecies(marked(f("within[0,3] p")));
  EXPECT_EQ(a, active(0, 3));
  EXPECT_FALSE(a.marked());
  EXPECT_EQ(activate_prophecies(active(-1, 2)), active(-1, 2));
  EXPECT_EQ(activate_prophecies(f("p U q")), f("p U q"));
}

TEST(VerdictCollapse, Examples) {
  EXPECT_EQ(verdict_collapse(Formula::conjunction(True, marked(f("WX G p")))), Tc);
  EXPECT_EQ(verdict_collapse(Formula::disjunction(False, marked(f("X F p")))), Fc);
  EXPECT_EQ(verdict_collapse(True), T);
  EXPECT_EQ(verdict_collapse(Formula::implication(True, active(0, 1))), Fc);
  EXPECT_EQ(verdict_collapse(Formula::negation(active(0, 1))), Tc);
}

TEST(ObligationRewrite, Examples) {
  EXPECT_EQ(obligation_rewrite(Formula::conjunction(True, marked(f("WX G p")))), f("G p"));
  EXPECT_EQ(obligation_rewrite(Formula::disjunction(False, marked(f("X F p")))), f("F p"));
  EXPECT_EQ(obligation_rewrite(Formula::disjunction(False, Formula::conjunction(True, marked(f("X (p U q)"))))),
            f("p U q"));
}

TEST(ObligationRewrite, ClearsMarks) {
  const Formula o = obligation_rewrite(Formula::conjunction(marked(f("WX G p")), marked(active(0, 1))));
  EXPECT_FALSE(o.any_marked());
}

TEST(Simplify, Rules) {
  EXPECT_EQ(simplify(Formula::conjunction(True, f("p"))), f("p"));
  EXPECT_EQ(simplify(Formula::conjunction(f("p"), False)), False);
  EXPECT_EQ(simplify(Formula::disjunction(f("p"), True)), True);
  EXPECT_EQ(simplify(Formula::disjunction(False, f("p"))), f("p"));
  EXPECT_EQ(simplify(Formula::negation(True)), False);
  EXPECT_EQ(simplify(Formula::negation(False)), True);
  EXPECT_EQ(simplify(Formula::implication(False, f("p"))), True);
  EXPECT_EQ(simplify(f("G p")), f("G p"));
}

TEST(MonitorStep, AtomDecided) {
  const StepResult r = monitor_step(f("p"), t(0), ev({"p"}, 0));
  EXPECT_EQ(r.verdict, T);
  EXPECT_EQ(r.next_obligation, True);
}

TEST(MonitorStep, GloballyKeepsObligation) {
  const StepResult r = monitor_step(f("G p"), t(0), ev({"p"}, 0));
  EXPECT_EQ(r.verdict, Tc);
  EXPECT_EQ(r.next_obligation, f("G p"));
}

TEST(MonitorStep, ProphecyWitnessed) {
  MonitorState s({"A", f("within[0,3] p")});
  EXPECT_EQ(s.step(ev({}, 0)), Fc);
  EXPECT_EQ(s.obligation, active(0, 3));
  EXPECT_EQ(s.step(ev({"p"}, 2)), T);
  EXPECT_EQ(s.obligation, True);
}

TEST(MonitorStep, ProphecyExpired) {
  MonitorState s({"A", f("within[0,3] p")});
  s.step(ev({}, 0));
  EXPECT_EQ(s.step(ev({}, 4)), F);
  EXPECT_EQ(s.obligation, False);
}

TEST(MonitorStep, IncludesNowOption) {
  EXPECT_EQ(monitor_step(f("within[0,3] p"), t(0), ev({"p"}, 0)).verdict, Fc);
  EXPECT_EQ(monitor_step(f("within[0,3] p"), t(0), ev({"p"}, 0), MonitorOptions{true}).verdict, T);
}

TEST(MonitorStep, PaperProperty) {
  // Verdicts frozen from finite_verdict on the same word.
  MonitorState s(parse_formula("@Master: G (o -> (within[0,3] m1 & within[0,3] m2))"));
  EXPECT_EQ(s.step(ev({}, 1)), Tc);
  EXPECT_EQ(s.step(ev({"o"}, 4)), Fc);
  EXPECT_EQ(s.step(ev({"m1", "m2"}, 7)), Tc);
  EXPECT_EQ(s.step(ev({"o"}, 8)), Fc);
  EXPECT_EQ(s.step(ev({"o", "m1"}, 11.5)), F);
  EXPECT_EQ(s.step(ev({}, 12)), F);
  EXPECT_TRUE(s.is_final());
  ASSERT_EQ(s.history.size(), 6U);
  const Word w{ev({}, 1), ev({"o"}, 4), ev({"m1", "m2"}, 7), ev({"o"}, 8), ev({"o", "m1"}, 11.5), ev({}, 12)};
  for (std::size_t k = 1; k <= w.size(); ++k)
    EXPECT_EQ(s.history[k - 1].verdict, finite_verdict_extended(w.prefix(k), s.property.body)) << k;
}

TEST(MonitorState, TimeRegression) {
  MonitorState s({"A", f("G p")});
  s.step(ev({"p"}, 3));
  EXPECT_THROW(s.step(ev({"p"}, 2)), TimeRegressionError);
  EXPECT_EQ(s.history.size(), 1U);
  EXPECT_NO_THROW(s.step(ev({"p"}, 3)));
}

TEST(MonitorState, LastVerdict) {
  MonitorState s({"A", f("F p")});
  EXPECT_FALSE(s.last_verdict().has_value());
  s.step(ev({}, 0));
  EXPECT_EQ(s.last_verdict(), Fc);
  s.step(ev({"p"}, 1));
  EXPECT_EQ(s.last_verdict(), T);
  EXPECT_TRUE(s.is_final());
}

TEST(MonitorProperties, EquivalenceOnSampledDepthTwo) {
  const chk::FormulaSpace space(chk::standard_leaves(), 2);
  const auto report = chk::check_equivalence(space, chk::sample_indices(space, 250, 21), chk::WordSpace::standard(),
                                             Execution::Serial);
  EXPECT_EQ(report.mismatches, 0U);
  EXPECT_EQ(report.stability_violations, 0U);
  EXPECT_EQ(report.steps, 250U * 10416U);
}

TEST(MonitorProperties, EquivalenceWithCurrentEventWitness) {
  const chk::FormulaSpace space(chk::standard_leaves(), 2);
  chk::CheckOptions options;
  options.prophecy_includes_now = true;
  const auto report = chk::check_equivalence(space, chk::sample_indices(space, 150, 22), chk::WordSpace::standard(),
                                             Execution::Serial, options);
  EXPECT_EQ(report.mismatches, 0U);
  EXPECT_EQ(report.stability_violations, 0U);
}

TEST(MonitorProperties, EquivalenceOnSampledDepthThree) {
  const chk::FormulaSpace space(chk::standard_leaves(), 3);
  const auto report = chk::check_equivalence(space, chk::sample_indices(space, 60, 23),
                                             chk::WordSpace({t(0), t(1), t(3)}, 4), Execution::Parallel);
  EXPECT_EQ(report.mismatches, 0U);
  EXPECT_EQ(report.stability_violations, 0U);
}

TEST(MonitorProperties, HygieneCoherenceAndDeterminism) {
  const chk::FormulaSpace space(chk::standard_leaves(), 2);
  const chk::WordSpace words({t(0), t(1), t(4)}, 2);
  const auto is_leaf = [](const Formula& g) { return g.is(FormulaKind::VerdictLeaf); };
  for (const auto& g : space.all()) {
    for (std::size_t w = 0; w < words.size(); ++w) {
      Formula obligation = g;
      Time last = words.word(w)[0].timestamp;
      for (const auto& e : words.word(w).events()) {
        const StepResult r = monitor_step(obligation, e.timestamp - last, e);
        const StepResult again = monitor_step(obligation, e.timestamp - last, e);
        ASSERT_EQ(r.verdict, again.verdict);
        ASSERT_EQ(r.next_obligation, again.next_obligation);
        ASSERT_FALSE(r.next_obligation.any_marked()) << to_string(g);
        ASSERT_FALSE(contains(r.next_obligation, is_leaf)) << to_string(g);
        if (r.verdict == T)
          ASSERT_EQ(r.next_obligation, True) << to_string(g);
        if (r.verdict == F)
          ASSERT_EQ(r.next_obligation, False) << to_string(g);
        obligation = r.next_obligation;
        last = e.timestamp;
      }
    }
  }
}

// A pending next operator collapses to a currently-false verdict even when
// its operand is already a constant, so the obligation can be True while the
// verdict is still Fc. The oracle agrees with the verdict.
TEST(MonitorProperties, ConstantObligationWithPendingVerdict) {
  for (const char* text : {"X true", "X false"}) {
    const StepResult r = monitor_step(f(text), Time{}, ev({}, 0));
    EXPECT_EQ(r.verdict, Fc) << text;
    EXPECT_EQ(r.next_obligation, Formula::constant(std::string(text) == "X true")) << text;
    EXPECT_EQ(finite_verdict(Word{ev({}, 0)}, f(text)), Fc) << text;
  }
  const StepResult wx = monitor_step(f("WX false"), Time{}, ev({}, 0));
  EXPECT_EQ(wx.verdict, Tc);
  EXPECT_EQ(wx.next_obligation, False);
}

TEST(MonitorProperties, FinalVerdictsAbsorb) {
  for (const char* text : {"p", "!p", "X p", "within[0,1] p"}) {
    MonitorState s({"A", f(text)});
    s.step(ev({"p"}, 0));
    s.step(ev({}, 5));
    ASSERT_TRUE(s.is_final()) << text;
    const Verdict v = *s.last_verdict();
    for (double at : {5.0, 6.0, 100.0}) {
      EXPECT_EQ(s.step(ev({"p", "q"}, at)), v);
      EXPECT_EQ(s.obligation, Formula::constant(v == T));
    }
  }
}

} // namespace
