#include "tempoweave/binding.hpp"
#include "tempoweave/engine.hpp"
#include "tempoweave/error.hpp"
#include "tempoweave/formula_text.hpp"
#include "tempoweave/policy.hpp"
#include "tempoweave/scenario.hpp"
#include "tempoweave/trace.hpp"

#include <CLI11.hpp>
#include <fmt/core.h>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace tw = tempoweave;

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitResolution = 65;
constexpr int kExitInternal = 70;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw tw::ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Prefixes parse errors with the file they came from.
template <typename Parse>
auto parse_file(const std::string& path, Parse parse) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const tw::ParseError& e) {
    throw tw::ParseError(path + ":" + e.what());
  }
}

void setup_logging() {
  auto logger = spdlog::stderr_logger_mt("tempoweave");
  logger->set_pattern("tempoweave: [%l] %v");
  spdlog::set_default_logger(logger);
  const char* level = std::getenv("TEMPOWEAVE_LOG");
  spdlog::set_level(level ? spdlog::level::from_str(level) : spdlog::level::warn);
}

struct Inputs {
  std::string scenario;
  std::string props;
  std::string bindings;
  std::string schedule;
  std::string trace;
  std::optional<std::uint64_t> seed;
  std::size_t steps = 20;
  std::string delta;
  std::string out;
  bool no_early_stop = false;
  bool interactive = false;
  bool includes_now = false;
};

std::optional<std::size_t> prompt(const tw::Snapshot& snap, const std::vector<tw::RuleMatch>& matches) {
  std::cerr << "step " << snap.seq << " at clock " << snap.clock << ": choose an environmental action\n";
  for (std::size_t i = 0; i < matches.size(); ++i)
    std::cerr << "  " << i << ") " << tw::describe(matches[i]) << "\n";
  std::cerr << "  n) no-op\n> " << std::flush;
  std::string line;
  while (std::getline(std::cin, line)) {
    if (line == "n" || line.empty())
      return std::nullopt;
    try {
      const std::size_t i = std::stoul(line);
      if (i < matches.size())
        return i;
    } catch (const std::exception&) {
    }
    std::cerr << "enter an index between 0 and " << (matches.size() ? matches.size() - 1 : 0) << " or n\n> "
              << std::flush;
  }
  return std::nullopt;
}

int simulate(const Inputs& in) {
  const tw::Scenario scenario = parse_file(in.scenario, tw::load_scenario);
  const auto properties = parse_file(in.props, tw::parse_properties);
  const tw::BindingSet bindings = parse_file(in.bindings, tw::parse_bindings);
  const tw::NameIndex names = tw::NameIndex::from(scenario);
  tw::validate_bindings(bindings, names);
  for (const auto& p : properties)
    tw::validate_property(p, bindings, names);

  auto policy = tw::EnvironmentPolicy::scripted({});
  if (in.interactive)
    policy = tw::EnvironmentPolicy::interactive(prompt);
  else if (in.seed)
    policy = tw::EnvironmentPolicy::seeded(*in.seed);
  else if (!in.schedule.empty())
    policy = tw::EnvironmentPolicy::scripted(parse_file(in.schedule, tw::parse_schedule));

  const tw::Time delta = in.delta.empty() ? scenario.default_timestep() : tw::Time::parse(in.delta);
  tw::RunOptions options;
  options.early_stop = !in.no_early_stop;
  options.coordination.monitor.prophecy_includes_now = in.includes_now;
  spdlog::info("simulating '{}' for up to {} steps, delta {}", scenario.name, in.steps, delta.to_string());

  const tw::RunTrace trace = tw::run(scenario, properties, bindings, std::move(policy), in.steps, delta, options);

  std::ofstream file;
  if (!in.out.empty()) {
    file.open(in.out, std::ios::binary);
    if (!file)
      throw tw::ParseError("cannot write '" + in.out + "'");
  }
  std::ostream& out = in.out.empty() ? std::cout : file;
  for (const auto& step : trace.steps) {
    out << tw::serialize(tw::to_record(step)) << "\n";
    if (step.environment)
      spdlog::debug("step {}: {}", step.snapshot.seq, tw::describe(*step.environment));
  }
  out.flush();
  if (trace.status == tw::RunTrace::Status::EarlyStop)
    spdlog::info("all monitors final after {} steps", trace.steps.size());
  return tw::verdict_exit_code(trace.final_verdicts());
}

int check_trace(const Inputs& in) {
  const auto records = parse_file(in.trace, tw::parse_trace);
  const auto properties = parse_file(in.props, tw::parse_properties);
  const tw::BindingSet bindings = parse_file(in.bindings, tw::parse_bindings);
  const tw::NameIndex names =
      in.scenario.empty() ? tw::collect_names(records) : tw::NameIndex::from(parse_file(in.scenario, tw::load_scenario));
  tw::validate_bindings(bindings, names);
  for (const auto& p : properties)
    tw::validate_property(p, bindings, names);

  tw::MonitorOptions options;
  options.prophecy_includes_now = in.includes_now;
  const auto rows = tw::check_trace(records, properties, bindings, options);
  std::vector<std::optional<tw::Verdict>> last(properties.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    fmt::print("{}\n", tw::verdict_line(records[i].snapshot.seq, rows[i]));
    for (std::size_t p = 0; p < rows[i].size(); ++p)
      if (rows[i][p])
        last[p] = rows[i][p];
  }
  for (std::size_t i = 0; i < records.size(); ++i)
    if (records[i].verdicts.size() == rows[i].size() && records[i].verdicts != rows[i])
      spdlog::warn("seq {}: recomputed verdicts differ from the recorded ones", records[i].snapshot.seq);
  return tw::verdict_exit_code(last);
}

// `{p,q}@2.5` or `{}@0`; remote propositions are written `@B.p`.
tw::Event parse_event(const std::string& token) {
  const auto close = token.find('}');
  if (token.empty() || token.front() != '{' || close == std::string::npos || close + 1 >= token.size() ||
      token[close + 1] != '@')
    throw tw::ParseError("event '" + token + "' is not of the form {p,q}@t");
  tw::Event e;
  e.timestamp = tw::Time::parse(token.substr(close + 2));
  std::stringstream props(token.substr(1, close - 1));
  std::string name;
  while (std::getline(props, name, ','))
    if (!name.empty())
      e.propositions.insert(name);
  return e;
}

int eval(const std::string& formula, const std::vector<std::string>& events, bool includes_now) {
  tw::Property p{"eval", {}};
  if (!formula.empty() && formula.front() == '@')
    p = tw::parse_formula(formula);
  else
    p.body = tw::parse_bare_formula(formula);
  tw::MonitorState state(p);
  tw::MonitorOptions options;
  options.prophecy_includes_now = includes_now;
  std::string verdicts;
  for (const auto& token : events) {
    const tw::Event e = parse_event(token);
    if (state.last_time && e.timestamp < *state.last_time)
      throw tw::ParseError("event '" + token + "' goes back in time");
    verdicts += (verdicts.empty() ? "" : " ") + std::string(tw::to_string(state.step(e, options)));
  }
  fmt::print("{}\n{}\n", verdicts, tw::to_string(state.obligation, tw::PrintMode::Extended));
  return tw::verdict_exit_code({state.last_verdict()});
}

int validate(const Inputs& in) {
  std::optional<tw::Scenario> scenario;
  std::optional<tw::BindingSet> bindings;
  if (!in.scenario.empty())
    scenario = parse_file(in.scenario, tw::load_scenario);
  if (!in.bindings.empty())
    bindings = parse_file(in.bindings, tw::parse_bindings);
  if (!in.props.empty()) {
    const auto props = parse_file(in.props, tw::parse_properties);
    if (scenario && bindings)
      for (const auto& p : props)
        tw::validate_property(p, *bindings, tw::NameIndex::from(*scenario));
  }
  if (scenario && bindings)
    tw::validate_bindings(*bindings, tw::NameIndex::from(*scenario));
  if (!in.schedule.empty())
    parse_file(in.schedule, tw::parse_schedule);
  if (!in.trace.empty()) {
    const std::string text = read_file(in.trace);
    std::istringstream lines(text);
    std::string line;
    std::size_t n = 0, bad = 0;
    while (std::getline(lines, line)) {
      ++n;
      if (line.empty())
        continue;
      for (const auto& problem : tw::validate_record(line)) {
        ++bad;
        spdlog::error("{}:{}: {}", in.trace, n, problem);
      }
    }
    if (bad)
      throw tw::ParseError(in.trace + ": " + std::to_string(bad) + " schema problem(s)");
  }
  fmt::print("ok\n");
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Multi-agent workflow simulator with timed LTL runtime verification"};
  app.require_subcommand(1);
  Inputs in;
  std::string formula;
  std::vector<std::string> events;

  auto* sim = app.add_subcommand("simulate", "Run a scenario and write one trace record per step");
  sim->add_option("--scenario", in.scenario, "Scenario file")->required();
  sim->add_option("--props", in.props, "Properties file")->required();
  sim->add_option("--bindings", in.bindings, "Proposition bindings file")->required();
  auto* schedule = sim->add_option("--schedule", in.schedule, "Environment schedule file");
  auto* seed = sim->add_option("--seed", in.seed, "Seed for random environmental choices");
  auto* interactive = sim->add_flag("--interactive", in.interactive, "Choose environmental actions on stdin");
  schedule->excludes(seed)->excludes(interactive);
  seed->excludes(interactive);
  sim->add_option("--steps", in.steps, "Maximum number of steps")->check(CLI::PositiveNumber);
  sim->add_option("--delta", in.delta, "Time step (default: scenario timestep, else 1)");
  sim->add_option("--out", in.out, "Write the trace here instead of stdout");
  sim->add_flag("--no-early-stop", in.no_early_stop, "Keep running after all verdicts are final");
  sim->add_flag("--prophecy-includes-now", in.includes_now, "Let the current event witness a prophecy");

  auto* check = app.add_subcommand("check-trace", "Replay the monitors over a recorded trace");
  check->add_option("trace", in.trace, "Trace file")->required();
  check->add_option("--props", in.props, "Properties file")->required();
  check->add_option("--bindings", in.bindings, "Proposition bindings file")->required();
  check->add_option("--scenario", in.scenario, "Resolve names against this scenario instead of the trace");
  check->add_flag("--prophecy-includes-now", in.includes_now, "Let the current event witness a prophecy");

  auto* ev = app.add_subcommand("eval", "Run the monitor on an inline word, e.g. eval \"G p\" {p}@0 {}@1");
  ev->add_option("formula", formula, "Formula, optionally with an @agent: annotation")->required();
  ev->add_option("events", events, "Events {p,q}@t")->required();
  ev->add_flag("--prophecy-includes-now", in.includes_now, "Let the current event witness a prophecy");

  auto* val = app.add_subcommand("validate", "Parse the given files and report problems");
  val->add_option("--scenario", in.scenario, "Scenario file");
  val->add_option("--props", in.props, "Properties file");
  val->add_option("--bindings", in.bindings, "Proposition bindings file");
  val->add_option("--schedule", in.schedule, "Environment schedule file");
  val->add_option("--trace", in.trace, "Trace file checked against the record schema");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*sim)
      return simulate(in);
    if (*check)
      return check_trace(in);
    if (*ev)
      return eval(formula, events, in.includes_now);
    return validate(in);
  } catch (const tw::ParseError& e) {
    spdlog::error("{}", e.what());
    return kExitUsage;
  } catch (const tw::ResolutionError& e) {
    spdlog::error("{}", e.what());
    return kExitResolution;
  } catch (const tw::PreconditionError& e) {
    spdlog::error("{}", e.what());
    return kExitUsage;
  } catch (const tw::PolicyExhaustedError& e) {
    spdlog::error("{}", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    spdlog::critical("internal error: {}", e.what());
    return kExitInternal;
  }
}
