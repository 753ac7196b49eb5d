#pragma once

#include "tempoweave/formula_text.hpp"
#include "tempoweave/oracle.hpp"
#include "tempoweave/scenario.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

namespace tw_test {

using namespace tempoweave;

inline Time t(double units) { return Time::from_ticks(static_cast<std::int64_t>(units * Time::kTicksPerUnit)); }

inline Event ev(std::initializer_list<const char*> props, double at) {
  Event e;
  for (const char* p : props)
    e.propositions.insert(p);
  e.timestamp = t(at);
  return e;
}

inline Formula f(const std::string& text) { return parse_bare_formula(text); }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string scenario_path(const std::string& name) { return std::string(TEMPOWEAVE_SCENARIO_DIR) + "/" + name; }

inline Scenario load(const std::string& name) { return load_scenario(read_file(scenario_path(name))); }

} // namespace tw_test
