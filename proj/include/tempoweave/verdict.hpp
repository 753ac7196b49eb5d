#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>

namespace tempoweave {

/// Four-valued verdict domain. Enumerators are declared in truth order
/// (False < CurrentlyFalse < CurrentlyTrue < True), so meet and join are
/// plain min and max.
enum class Verdict : std::uint8_t {
  False = 0,
  CurrentlyFalse = 1,
  CurrentlyTrue = 2,
  True = 3,
};

inline constexpr std::array<Verdict, 4> kAllVerdicts = {
    Verdict::False, Verdict::CurrentlyFalse, Verdict::CurrentlyTrue, Verdict::True};

constexpr Verdict meet(Verdict a, Verdict b) { return a < b ? a : b; }
constexpr Verdict join(Verdict a, Verdict b) { return a < b ? b : a; }

/// Order-reversing involution: True <-> False, CurrentlyTrue <-> CurrentlyFalse.
constexpr Verdict complement(Verdict a) {
  return static_cast<Verdict>(3 - static_cast<std::uint8_t>(a));
}

/// True and False are final; a monitor never revises them.
constexpr bool is_final(Verdict a) { return a == Verdict::True || a == Verdict::False; }

/// Wire names: "T", "Tc", "Fc", "F".
std::string_view to_string(Verdict v);
std::optional<Verdict> verdict_from_string(std::string_view s);

std::ostream& operator<<(std::ostream& os, Verdict v);

} // namespace tempoweave
