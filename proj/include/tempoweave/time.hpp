#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace tempoweave {

/// Exact time value stored as a fixed-point integer with six decimal places.
///
/// Interval shifting in the monitor must be exact so that boundary checks like
/// `upper < 0` never suffer from rounding. Values may be negative (shifted
/// prophecy bounds), but model clocks and timestamps are always >= 0.
class Time {
public:
  static constexpr std::int64_t kTicksPerUnit = 1'000'000;
  static constexpr int kFractionDigits = 6;

  constexpr Time() = default;

  static constexpr Time from_ticks(std::int64_t ticks) {
    Time t;
    t.ticks_ = ticks;
    return t;
  }
  static constexpr Time units(std::int64_t whole) {
    return from_ticks(whole * kTicksPerUnit);
  }

  /// Parses a decimal literal such as `3`, `2.5` or `-0.125`. At most six
  /// fractional digits are accepted; throws ParseError otherwise.
  static Time parse(std::string_view text);

  /// Shortest exact decimal rendering (`2.5`, `3`, `-1`).
  std::string to_string() const;

  constexpr std::int64_t ticks() const { return ticks_; }
  constexpr bool is_negative() const { return ticks_ < 0; }

  constexpr Time operator-() const { return from_ticks(-ticks_); }
  constexpr Time& operator+=(Time o) {
    ticks_ += o.ticks_;
    return *this;
  }
  constexpr Time& operator-=(Time o) {
    ticks_ -= o.ticks_;
    return *this;
  }
  friend constexpr Time operator+(Time a, Time b) { return a += b; }
  friend constexpr Time operator-(Time a, Time b) { return a -= b; }

  friend constexpr auto operator<=>(Time, Time) = default;
  friend constexpr bool operator==(Time, Time) = default;

private:
  std::int64_t ticks_ = 0;
};

std::ostream& operator<<(std::ostream& os, Time t);

} // namespace tempoweave
