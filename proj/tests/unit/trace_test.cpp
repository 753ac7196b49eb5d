#include "support.hpp"

#include "tempoweave/binding.hpp"
#include "tempoweave/engine.hpp"
#include "tempoweave/error.hpp"
#include "tempoweave/policy.hpp"
#include "tempoweave/trace.hpp"

#include <gtest/gtest.h>

namespace {

using namespace tw_test;

constexpr Verdict Tc = Verdict::CurrentlyTrue, Fc = Verdict::CurrentlyFalse, F = Verdict::False;

struct Corpus {
  std::string name;
  Scenario scenario;
  std::vector<Property> props;
  BindingSet bindings;
};

Corpus corpus(const std::string& name) {
  return {name, load(name + ".scn"), parse_properties(read_file(scenario_path(name + ".props"))),
          parse_bindings(read_file(scenario_path(name + ".bind")))};
}

std::vector<TraceRecord> simulate(const Corpus& c, EnvironmentPolicy policy, std::size_t steps) {
  RunOptions o;
  o.early_stop = false;
  const RunTrace r = run(c.scenario, c.props, c.bindings, std::move(policy), steps, c.scenario.default_timestep(), o);
  std::vector<TraceRecord> out;
  for (const auto& st : r.steps)
    out.push_back(to_record(st));
  return out;
}

const char* kLine = R"({"v":1,"seq":4,"clock":"4","agents":[{"name":"Master","task":"B1","active":true,)"
                    R"("inputs":["Obstacle"],"messages":[]},{"name":"Slave1","task":"GF2","active":true,)"
                    R"("inputs":[],"messages":[{"id":1,"kind":"Stop","sender":"Master"}]}],"elapsed":[],)"
                    R"("in_transit":[{"id":2,"kind":"Stop","sender":"Master","recipient":"Slave2"}],)"
                    R"("verdicts":["Fc",null]})";

TEST(TraceRecord, HandWrittenLineRoundTrips) {
  const TraceRecord r = parse_record(kLine);
  EXPECT_EQ(r.snapshot.seq, 4U);
  EXPECT_EQ(r.snapshot.clock, t(4));
  EXPECT_TRUE(r.snapshot.agent("Master").active);
  EXPECT_EQ(r.snapshot.next_message_id, 3U);
  EXPECT_EQ(r.verdicts, (std::vector<std::optional<Verdict>>{Fc, std::nullopt}));
  EXPECT_EQ(serialize(r), kLine);
  EXPECT_TRUE(validate_record(kLine).empty());
}

TEST(TraceRecord, DecimalClock) {
  TraceRecord r;
  r.snapshot.seq = 3;
  r.snapshot.clock = t(1.5);
  const std::string line = serialize(r);
  EXPECT_NE(line.find("\"clock\":\"1.5\""), std::string::npos);
  EXPECT_EQ(parse_record(line), r);
}

TEST(TraceRecord, SchemaProblems) {
  EXPECT_FALSE(validate_record("not json").empty());
  EXPECT_FALSE(validate_record("[]").empty());
  EXPECT_FALSE(validate_record(R"({"v":1,"seq":1})").empty());
  std::string bad = kLine;
  bad.replace(bad.find("\"Fc\""), 4, "\"maybe\"");
  EXPECT_FALSE(validate_record(bad).empty());
  std::string extra = kLine;
  extra.insert(1, "\"extra\":0,");
  EXPECT_FALSE(validate_record(extra).empty());
  std::string version = kLine;
  version.replace(version.find("\"v\":1"), 5, "\"v\":2");
  EXPECT_FALSE(validate_record(version).empty());
  std::string clock = kLine;
  clock.replace(clock.find("\"4\""), 3, "4");
  EXPECT_FALSE(validate_record(clock).empty());
  EXPECT_THROW(parse_record(bad), ParseError);
}

TEST(TraceFile, Errors) {
  EXPECT_THROW(parse_trace(""), ParseError);
  const std::string a = serialize(TraceRecord{Snapshot{1, t(2), {}, {}, {}, 1}, {}});
  const std::string b = serialize(TraceRecord{Snapshot{2, t(1), {}, {}, {}, 1}, {}});
  const std::string c = serialize(TraceRecord{Snapshot{1, t(3), {}, {}, {}, 1}, {}});
  try {
    parse_trace(a + "\n" + b + "\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2U);
  }
  EXPECT_THROW(parse_trace(a + "\n" + c + "\n"), ParseError);
  EXPECT_EQ(parse_trace(a + "\n\n" + serialize(TraceRecord{Snapshot{2, t(2), {}, {}, {}, 1}, {}})).size(), 2U);
}

TEST(TraceFile, HandWrittenThreeLineTrace) {
  // o at clock 1, both slaves idle at clock 2; verdicts frozen from
  // finite_verdict on the extracted word.
  const std::string text =
      R"({"v":1,"seq":1,"clock":"1","agents":[{"name":"Master","task":"GF1","active":true,"inputs":["Obstacle"],"messages":[]},{"name":"Slave1","task":"GF2","active":false,"inputs":[],"messages":[]},{"name":"Slave2","task":"GF3","active":false,"inputs":[],"messages":[]}],"elapsed":[],"in_transit":[],"verdicts":[]})"
      "\n"
      R"({"v":1,"seq":2,"clock":"2","agents":[{"name":"Master","task":"B1","active":true,"inputs":[],"messages":[]},{"name":"Slave1","task":"I1","active":true,"inputs":[],"messages":[]},{"name":"Slave2","task":"I2","active":true,"inputs":[],"messages":[]}],"elapsed":[],"in_transit":[],"verdicts":[]})"
      "\n"
      R"({"v":1,"seq":3,"clock":"3","agents":[{"name":"Master","task":"B1","active":true,"inputs":[],"messages":[]},{"name":"Slave1","task":"I1","active":false,"inputs":[],"messages":[]},{"name":"Slave2","task":"I2","active":false,"inputs":[],"messages":[]}],"elapsed":[],"in_transit":[],"verdicts":[]})"
      "\n";
  const auto records = parse_trace(text);
  const Corpus c = corpus("master_saviour");
  const NameIndex names = collect_names(records);
  EXPECT_NO_THROW(validate_bindings(c.bindings, names));
  const auto rows = check_trace(records, c.props, c.bindings);
  ASSERT_EQ(rows.size(), 3U);
  EXPECT_EQ(rows[0][0], Fc);
  EXPECT_EQ(rows[1][0], Tc);
  EXPECT_EQ(rows[2][0], Tc);
  const Word w{ev({"o"}, 1), ev({"m1", "m2"}, 2), ev({"m1", "m2"}, 3)};
  for (std::size_t k = 1; k <= 3; ++k)
    EXPECT_EQ(rows[k - 1][0], finite_verdict_extended(w.prefix(k), c.props[0].body));
}

TEST(TraceFile, SimulateThenCheckAgrees) {
  for (const char* name : {"master_saviour", "patrol", "pingpong", "broadcast"}) {
    const Corpus c = corpus(name);
    for (std::uint64_t seed : {1, 2, 3}) {
      const auto records = simulate(c, EnvironmentPolicy::seeded(seed), 40);
      std::string text;
      for (const auto& r : records) {
        const std::string line = serialize(r);
        ASSERT_TRUE(validate_record(line).empty()) << line;
        text += line + "\n";
      }
      const auto parsed = parse_trace(text);
      // next_message_id is not part of the record, so compare what is.
      ASSERT_EQ(parsed.size(), records.size());
      for (std::size_t i = 0; i < parsed.size(); ++i)
        ASSERT_EQ(serialize(parsed[i]), serialize(records[i])) << name << " seed " << seed;
      const auto rows = check_trace(parsed, c.props, c.bindings);
      for (std::size_t i = 0; i < rows.size(); ++i)
        EXPECT_EQ(verdict_line(parsed[i].snapshot.seq, rows[i]),
                  verdict_line(records[i].snapshot.seq, records[i].verdicts))
            << name << " seed " << seed << " step " << i + 1;
    }
  }
}

TEST(TraceFile, VerdictLineAndExitCode) {
  EXPECT_EQ(verdict_line(3, {Tc, std::nullopt}), R"({"v":1,"seq":3,"verdicts":["Tc",null]})");
  EXPECT_EQ(verdict_exit_code({Tc, std::nullopt}), 0);
  EXPECT_EQ(verdict_exit_code({Tc, Fc}), 2);
  EXPECT_EQ(verdict_exit_code({Fc, F}), 3);
  EXPECT_EQ(verdict_exit_code({Verdict::True}), 0);
}

} // namespace
