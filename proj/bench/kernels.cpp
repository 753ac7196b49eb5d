#include "tempoweave/binding.hpp"
#include "tempoweave/check.hpp"
#include "tempoweave/dispatch.hpp"
#include "tempoweave/engine.hpp"
#include "tempoweave/formula_text.hpp"
#include "tempoweave/scenario.hpp"

#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

namespace {

using namespace tempoweave;
namespace chk = tempoweave::check;

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::Parallel : Execution::Serial; }

void BM_Equivalence(benchmark::State& state) {
  const chk::FormulaSpace space(chk::standard_leaves(), 3);
  const auto indices = chk::sample_indices(space, 64, 5);
  const chk::WordSpace words = chk::WordSpace::standard();
  std::uint64_t steps = 0;
  for (auto _ : state) {
    const auto report = chk::check_equivalence(space, indices, words, mode(state));
    steps += report.steps;
    benchmark::DoNotOptimize(report.mismatches);
  }
  state.counters["steps/s"] = benchmark::Counter(static_cast<double>(steps), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_Equivalence)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Unrolling(benchmark::State& state) {
  const auto operands = chk::FormulaSpace(chk::standard_leaves(), 2).all();
  const chk::WordSpace words({Time::from_ticks(0), Time::from_ticks(Time::kTicksPerUnit)}, 4);
  for (auto _ : state) {
    const auto report = chk::check_unrolling(operands, words, mode(state));
    benchmark::DoNotOptimize(report.mismatches);
  }
}
BENCHMARK(BM_Unrolling)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Five-agent broadcast with its properties repeated so that every active
// snapshot steps many monitors.
void BM_Dispatch(benchmark::State& state) {
  const std::string dir = TEMPOWEAVE_SCENARIO_DIR;
  const Scenario s = load_scenario(slurp(dir + "/broadcast.scn"));
  const BindingSet bindings = parse_bindings(slurp(dir + "/broadcast.bind"));
  const auto base = parse_properties(slurp(dir + "/broadcast.props"));
  std::vector<Property> props;
  for (int i = 0; i < 16; ++i)
    props.insert(props.end(), base.begin(), base.end());
  RunOptions o;
  o.early_stop = false;
  o.coordination.check_conformance = false;
  const RunTrace trace = run(s, {}, bindings, EnvironmentPolicy::seeded(3), 60, s.default_timestep(), o);
  std::vector<Snapshot> snapshots;
  for (const auto& st : trace.steps) {
    Snapshot snap = st.snapshot;
    for (const auto& name : st.active)
      snap.agent(name).active = true;
    snapshots.push_back(std::move(snap));
  }
  for (auto _ : state) {
    std::vector<MonitorState> monitors;
    for (const auto& p : props)
      monitors.emplace_back(p);
    for (const auto& snap : snapshots)
      benchmark::DoNotOptimize(dispatch(snap, monitors, bindings, {}, mode(state)));
  }
}
BENCHMARK(BM_Dispatch)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

} // namespace

BENCHMARK_MAIN();
