#include "tempoweave/verdict.hpp"

#include <ostream>

namespace tempoweave {

std::string_view to_string(Verdict v) {
  switch (v) {
  case Verdict::True:
    return "T";
  case Verdict::CurrentlyTrue:
    return "Tc";
  case Verdict::CurrentlyFalse:
    return "Fc";
  case Verdict::False:
    return "F";
  }
  return "?";
}

std::optional<Verdict> verdict_from_string(std::string_view s) {
  for (Verdict v : kAllVerdicts)
    if (to_string(v) == s)
      return v;
  return std::nullopt;
}

std::ostream& operator<<(std::ostream& os, Verdict v) { return os << to_string(v); }

} // namespace tempoweave
