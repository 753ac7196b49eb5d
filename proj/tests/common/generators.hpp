#pragma once

#include "tempoweave/scenario.hpp"

#include <random>
#include <string>
#include <vector>

namespace tw_test {

using namespace tempoweave;

// Random valid scenarios: every agent gets an initial task, a spontaneous
// transition out of it and a few triggered transitions between its tasks.
inline Scenario random_scenario(std::mt19937_64& rng) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  Scenario s;
  s.name = "gen" + std::to_string(pick(100000));
  s.task_kinds.push_back({"Start", true});
  for (std::size_t i = 0, n = 1 + pick(4); i < n; ++i)
    s.task_kinds.push_back({"Kind" + std::to_string(i), i > 0 && pick(5) == 0});
  for (std::size_t i = 0, n = pick(3); i < n; ++i)
    s.input_kinds.push_back("In" + std::to_string(i));
  for (std::size_t i = 0, n = pick(3); i < n; ++i)
    s.message_kinds.push_back("Msg" + std::to_string(i));
  if (pick(2))
    s.timestep = Time::from_ticks(static_cast<std::int64_t>(1 + pick(4'000'000)));

  const std::size_t agents = 1 + pick(4);
  for (std::size_t a = 0; a < agents; ++a) {
    AgentDef def;
    def.name = "Agent" + std::to_string(a);
    def.tasks.push_back({"init" + std::to_string(a), "Start"});
    for (std::size_t k = 0, n = 1 + pick(4); k < n; ++k) {
      std::string kind;
      do
        kind = s.task_kinds[pick(s.task_kinds.size())].name;
      while (kind == "Start" || s.find_task_kind(kind)->initial);
      def.tasks.push_back({"a" + std::to_string(a) + "t" + std::to_string(k), kind});
    }
    s.agents.push_back(std::move(def));
  }
  std::size_t counter = 0;
  for (auto& def : s.agents) {
    auto task = [&] { return def.tasks[pick(def.tasks.size())].id; };
    auto sends = [&] {
      std::vector<Send> out;
      if (!s.message_kinds.empty())
        for (std::size_t i = 0, n = pick(3); i < n; ++i)
          out.push_back({s.message_kinds[pick(s.message_kinds.size())], s.agents[pick(s.agents.size())].name});
      return out;
    };
    def.transitions.push_back({"tr" + std::to_string(counter++), def.tasks[0].id, task(), Trigger::none(), sends()});
    for (std::size_t i = 0, n = pick(5); i < n; ++i) {
      Trigger trig;
      switch (pick(3)) {
      case 0:
        if (s.input_kinds.empty())
          continue;
        trig = Trigger::input(s.input_kinds[pick(s.input_kinds.size())]);
        break;
      case 1:
        if (s.message_kinds.empty())
          continue;
        trig = Trigger::message(s.message_kinds[pick(s.message_kinds.size())]);
        break;
      default:
        trig = Trigger::timed(Time::from_ticks(static_cast<std::int64_t>(1 + pick(9'000'000))));
      }
      const std::string source = def.tasks[1 + pick(def.tasks.size() - 1)].id;
      bool clash = false;
      for (const auto& tr : def.transitions)
        clash = clash || (tr.source == source && tr.trigger == trig);
      if (!clash)
        def.transitions.push_back({"tr" + std::to_string(counter++), source, task(), trig, sends()});
    }
  }
  return s;
}

} // namespace tw_test
