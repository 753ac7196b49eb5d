#include "generators.hpp"
#include "support.hpp"

#include "tempoweave/error.hpp"
#include "tempoweave/snapshot.hpp"

#include <gtest/gtest.h>

#include <random>

namespace {

using namespace tw_test;

const char* kMinimal = R"(system minimal
taskkind Initial initial
taskkind Idle
agent A {
  task Init: Initial
  task Rest: Idle
  transition go: Init -> Rest
}
)";

TEST(LoadScenario, MasterSaviour) {
  const Scenario s = load("master_saviour.scn");
  EXPECT_EQ(s.name, "master_saviour");
  ASSERT_EQ(s.agents.size(), 3U);
  const AgentDef* master = s.find_agent("Master");
  ASSERT_NE(master, nullptr);
  const TransitionDef* t1 = master->find_transition("t1");
  ASSERT_NE(t1, nullptr);
  EXPECT_EQ(t1->trigger, Trigger::input("Obstacle"));
  EXPECT_EQ(t1->sends, (std::vector<Send>{{"Stop", "Slave1"}, {"Stop", "Slave2"}}));
  EXPECT_EQ(s.find_agent("Slave2")->find_transition("r1")->trigger, Trigger::message("Stop"));
  EXPECT_EQ(s.initial_task(*master).id, "Init");
  EXPECT_EQ(s.default_timestep(), t(1));
}

TEST(LoadScenario, Minimal) {
  const Scenario s = load_scenario(kMinimal);
  ASSERT_EQ(s.agents.size(), 1U);
  EXPECT_FALSE(s.timestep.has_value());
  EXPECT_EQ(s.default_timestep(), t(1));
}

TEST(LoadScenario, TimedGuards) {
  const Scenario s = load("patrol.scn");
  EXPECT_EQ(s.find_agent("Sentry")->find_transition("reach_south")->trigger, Trigger::timed(t(1.5)));
  EXPECT_EQ(s.default_timestep(), t(0.5));
}

TEST(LoadScenario, CorpusFilesLoad) {
  for (const char* name : {"master_saviour.scn", "patrol.scn", "pingpong.scn", "broadcast.scn"})
    EXPECT_NO_THROW(load(name)) << name;
}

std::string with(const std::string& extra) { return std::string(kMinimal) + extra; }

TEST(LoadScenario, Errors) {
  EXPECT_THROW(load_scenario(R"(system x
taskkind Initial initial
agent A { task Init: Initial transition go: Init -> Nowhere })"),
               ResolutionError);
  EXPECT_THROW(load_scenario("system x\ntaskkind Initial initial\ntaskkind Initial\n"), ResolutionError);
  EXPECT_THROW(load_scenario("system x\ntaskkind Idle\nagent A { task I: Idle }"), ResolutionError);
  EXPECT_THROW(load_scenario(R"(system x
taskkind Initial initial
agent A { task I: Initial task J: Initial })"),
               ResolutionError);
  EXPECT_THROW(load_scenario(with("agent B { task I: Initial transition t: I -> I after 0 }")), ResolutionError);
  EXPECT_THROW(load_scenario(with("agent B { task I: Initial transition t: I -> I on input Nope }")),
               ResolutionError);
  EXPECT_THROW(load_scenario(with("inputkind K\nagent B { task I: Initial task J: Idle\n"
                                  "transition t: I -> J on input K\ntransition u: I -> I on input K }")),
               ResolutionError);
  EXPECT_THROW(load_scenario(with("messagekind M\nagent B { task I: Initial transition t: I -> I send M to C }")),
               ResolutionError);
  EXPECT_THROW(load_scenario(with("agent A { task I: Initial }")), ResolutionError);
  EXPECT_THROW(load_scenario("system x taskkind"), ParseError);
  EXPECT_THROW(load_scenario("system agent"), ParseError);
  EXPECT_THROW(load_scenario("system x\ntimestep 1\ntimestep 2\n"), ParseError);
  EXPECT_THROW(load_scenario("agent A {}"), ParseError);
}

TEST(PrintScenario, CorpusRoundTrip) {
  for (const char* name : {"master_saviour.scn", "patrol.scn", "pingpong.scn", "broadcast.scn"}) {
    const Scenario s = load(name);
    EXPECT_EQ(load_scenario(print_scenario(s)), s) << name;
  }
}

TEST(PrintScenario, GeneratedRoundTrip) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    const Scenario s = random_scenario(rng);
    ASSERT_NO_THROW(validate_scenario(s)) << print_scenario(s);
    const std::string text = print_scenario(s);
    Scenario back;
    ASSERT_NO_THROW(back = load_scenario(text)) << text;
    EXPECT_EQ(back, s) << text;
    EXPECT_EQ(print_scenario(back), text);
    EXPECT_TRUE(check_conformance(init_snapshot(back), back).empty());
  }
}

} // namespace
