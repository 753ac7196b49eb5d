#include "support.hpp"

#include "tempoweave/binding.hpp"
#include "tempoweave/dispatch.hpp"
#include "tempoweave/error.hpp"
#include "tempoweave/rules.hpp"
#include "tempoweave/snapshot.hpp"

#include <gtest/gtest.h>

namespace {

using namespace tw_test;

struct MasterSaviour : ::testing::Test {
  Scenario s = load("master_saviour.scn");
  BindingSet bindings = parse_bindings(read_file(scenario_path("master_saviour.bind")));
  Snapshot init = init_snapshot(s);
};

TEST_F(MasterSaviour, InitSnapshot) {
  EXPECT_EQ(init.seq, 0U);
  EXPECT_EQ(init.clock, t(0));
  ASSERT_EQ(init.agents.size(), 3U);
  EXPECT_EQ(init.agent("Master").task, "Init");
  EXPECT_EQ(init.agent("Slave1").task, "Init1");
  for (const auto& a : init.agents) {
    EXPECT_FALSE(a.active);
    EXPECT_TRUE(a.inputs.empty());
    EXPECT_TRUE(a.messages.empty());
  }
  EXPECT_TRUE(init.in_transit.empty());
  EXPECT_EQ(init_snapshot(s), init);
  EXPECT_TRUE(check_conformance(init, s).empty());
}

TEST(InitSnapshot, SingleAgent) {
  const Scenario s = load_scenario("system x\ntaskkind Initial initial\nagent A { task Init: Initial }");
  EXPECT_EQ(init_snapshot(s).agent("A").task, "Init");
}

TEST(InitSnapshot, ElapsedCountersStartAtZero) {
  const Scenario s = load("patrol.scn");
  const Snapshot snap = init_snapshot(s);
  ASSERT_NE(snap.find_elapsed("Sentry", "leave_north"), nullptr);
  EXPECT_EQ(snap.find_elapsed("Sentry", "leave_north")->value, t(0));
  EXPECT_EQ(snap.find_elapsed("Sentry", "go"), nullptr);
}

TEST_F(MasterSaviour, ConformanceContainment) {
  Snapshot bad = init;
  const Message stop{7, "Stop", "Master", "Slave1"};
  bad.in_transit.push_back(stop);
  bad.agent("Slave1").messages.push_back(stop);
  bad.next_message_id = 8;
  const auto v = check_conformance(bad, s);
  ASSERT_EQ(v.size(), 1U);
  EXPECT_EQ(v[0].category, ViolationCategory::Containment);
}

TEST(Conformance, NegativeElapsed) {
  const Scenario s = load("patrol.scn");
  Snapshot bad = init_snapshot(s);
  bad.find_elapsed("Sentry", "leave_north")->value = t(-1);
  const auto v = check_conformance(bad, s);
  ASSERT_EQ(v.size(), 1U);
  EXPECT_EQ(v[0].category, ViolationCategory::Range);
}

TEST_F(MasterSaviour, ConformanceTypingAndReference) {
  Snapshot bad = init;
  bad.agent("Master").task = "Nowhere";
  auto v = check_conformance(bad, s);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].category, ViolationCategory::Reference);

  bad = init;
  bad.agent("Master").inputs.insert("Laser");
  v = check_conformance(bad, s);
  ASSERT_EQ(v.size(), 1U);
  EXPECT_EQ(v[0].category, ViolationCategory::Typing);

  bad = init;
  bad.in_transit.push_back({1, "Stop", "Ghost", "Slave1"});
  bad.next_message_id = 2;
  v = check_conformance(bad, s);
  ASSERT_EQ(v.size(), 1U);
  EXPECT_EQ(v[0].category, ViolationCategory::Reference);
}

TEST_F(MasterSaviour, BindingsFile) {
  ASSERT_EQ(bindings.bindings().size(), 3U);
  EXPECT_EQ(bindings.find("o")->predicate, (BindingTemplate{TemplateKind::InputPresent, {"Master", "Obstacle"}}));
  EXPECT_EQ(parse_bindings(print_bindings(bindings)), bindings);
  EXPECT_NO_THROW(validate_bindings(bindings, NameIndex::from(s)));
}

TEST(Bindings, Errors) {
  EXPECT_THROW(parse_bindings("prop a = nonsense(A)"), ParseError);
  EXPECT_THROW(parse_bindings("prop a = agent_active(A, B)"), ParseError);
  EXPECT_THROW(parse_bindings("prop a = agent_active(A)\nprop a = agent_active(B)"), ParseError);
  const Scenario s = load("master_saviour.scn");
  EXPECT_THROW(validate_bindings(parse_bindings("prop a = task_current(Master, I1)"), NameIndex::from(s)),
               ResolutionError);
  EXPECT_THROW(validate_bindings(parse_bindings("prop a = input_present(Ghost, Edge)"), NameIndex::from(s)),
               ResolutionError);
  EXPECT_NO_THROW(validate_bindings(parse_bindings("prop a = input_present(self, Edge)"), NameIndex::from(s)));
}

TEST_F(MasterSaviour, EvalBinding) {
  Snapshot snap = init;
  snap.agent("Master").inputs.insert("Obstacle");
  EXPECT_TRUE(eval_binding({TemplateKind::InputPresent, {"Master", "Obstacle"}}, snap));
  EXPECT_FALSE(eval_binding({TemplateKind::InputPresent, {"Slave1", "Obstacle"}}, snap));
  EXPECT_FALSE(eval_binding({TemplateKind::TaskCurrent, {"Slave1", "I1"}}, init));
  EXPECT_TRUE(eval_binding({TemplateKind::TaskCurrent, {"Slave1", "Init1"}}, init));
  EXPECT_FALSE(eval_binding({TemplateKind::AgentActive, {"Master"}}, init));
  EXPECT_TRUE(eval_binding({TemplateKind::InputPresent, {"self", "Obstacle"}}, snap, "Master"));

  snap.in_transit.push_back({1, "Stop", "Master", "Slave1"});
  snap.next_message_id = 2;
  EXPECT_TRUE(eval_binding({TemplateKind::MessageInTransit, {"Stop", "Master", "Slave1"}}, snap));
  EXPECT_FALSE(eval_binding({TemplateKind::MessageHeld, {"Slave1", "Stop"}}, snap));
  const Snapshot held = receive_message(snap, 1);
  EXPECT_TRUE(eval_binding({TemplateKind::MessageHeld, {"Slave1", "Stop"}}, held));
  EXPECT_FALSE(eval_binding({TemplateKind::MessageInTransit, {"Stop", "Master", "Slave1"}}, held));
}

TEST_F(MasterSaviour, ResolveEvent) {
  const Property prop = parse_formula("@Master: G (o -> (within[0,3] m1 & within[0,3] m2))");
  Snapshot snap = init;
  snap.clock = t(4);
  snap.agent("Master").active = true;
  snap.agent("Master").inputs.insert("Obstacle");
  const Event e = resolve_event(snap, prop, bindings);
  EXPECT_EQ(e.propositions, (std::set<std::string>{"o"}));
  EXPECT_EQ(e.timestamp, t(4));

  snap.agent("Master").inputs.clear();
  EXPECT_TRUE(resolve_event(snap, prop, bindings).propositions.empty());

  snap.agent("Master").active = false;
  EXPECT_THROW(resolve_event(snap, prop, bindings), PreconditionError);
}

TEST_F(MasterSaviour, ResolveEventHeldMessageAndRemoteAtom) {
  const BindingSet b = parse_bindings("prop m1 = message_held(Slave1, Stop)\nprop busy = agent_active(self)");
  Snapshot snap = init;
  snap.agent("Slave1").messages.push_back({1, "Stop", "Master", "Slave1"});
  snap.next_message_id = 2;
  snap.agent("Master").active = true;
  const Event e = resolve_event(snap, parse_formula("@Master: m1 & @Slave1.busy"), b);
  EXPECT_EQ(e.propositions, (std::set<std::string>{"busy", "m1"}));
  snap.agent("Slave1").active = true;
  EXPECT_TRUE(resolve_event(snap, parse_formula("@Master: @Slave1.busy"), b).holds("@Slave1.busy"));
  EXPECT_THROW(resolve_event(snap, parse_formula("@Master: nope"), b), ResolutionError);
}

TEST_F(MasterSaviour, DispatchOnlyActiveAgents) {
  std::vector<MonitorState> monitors{MonitorState(parse_formula("@Master: G !o")),
                                     MonitorState(parse_formula("@Slave1: F m1"))};
  Snapshot snap = init;
  snap.clock = t(1);
  snap.agent("Master").active = true;
  for (Execution ex : {Execution::Serial, Execution::Parallel}) {
    auto ms = monitors;
    const auto v = dispatch(snap, ms, bindings, {}, ex);
    ASSERT_EQ(v.size(), 2U);
    EXPECT_EQ(v[0], Verdict::CurrentlyTrue);
    EXPECT_FALSE(v[1].has_value());
    EXPECT_EQ(ms[1].history.size(), 0U);
    EXPECT_EQ(ms[0].history.size(), 1U);
  }
  snap.agent("Master").active = false;
  auto ms = monitors;
  const auto none = dispatch(snap, ms, bindings);
  EXPECT_FALSE(none[0].has_value());
  EXPECT_FALSE(none[1].has_value());
}

TEST_F(MasterSaviour, DispatchSerialAndParallelAgree) {
  std::vector<MonitorState> monitors;
  for (int i = 0; i < 8; ++i)
    monitors.emplace_back(parse_formula(i % 2 ? "@Master: F o" : "@Slave1: G !m1"));
  Snapshot snap = init;
  for (auto& a : snap.agents)
    a.active = true;
  auto serial = monitors, parallel = monitors;
  for (int k = 0; k < 3; ++k) {
    snap.clock = t(k);
    EXPECT_EQ(dispatch(snap, serial, bindings, {}, Execution::Serial),
              dispatch(snap, parallel, bindings, {}, Execution::Parallel));
  }
  for (std::size_t i = 0; i < monitors.size(); ++i)
    EXPECT_EQ(serial[i].history, parallel[i].history);
}

TEST_F(MasterSaviour, DeltaIsPerAgent) {
  std::vector<MonitorState> monitors{MonitorState(parse_formula("@Master: within[0,3] o"))};
  Snapshot snap = init;
  snap.agent("Master").active = true;
  snap.clock = t(1);
  EXPECT_EQ(dispatch(snap, monitors, bindings)[0], Verdict::CurrentlyFalse);
  snap.clock = t(5);
  snap.agent("Master").inputs.insert("Obstacle");
  EXPECT_EQ(dispatch(snap, monitors, bindings)[0], Verdict::False);
}

TEST_F(MasterSaviour, ValidateProperty) {
  const NameIndex names = NameIndex::from(s);
  EXPECT_NO_THROW(validate_property(parse_formula("@Master: o & @Slave1.m1"), bindings, names));
  EXPECT_THROW(validate_property(parse_formula("@Ghost: o"), bindings, names), ResolutionError);
  EXPECT_THROW(validate_property(parse_formula("@Master: zz"), bindings, names), ResolutionError);
  EXPECT_THROW(validate_property(parse_formula("@Master: @Ghost.o"), bindings, names), ResolutionError);
}

} // namespace
