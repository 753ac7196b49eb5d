#include "tempoweave/time.hpp"

#include "tempoweave/error.hpp"

#include <charconv>
#include <limits>
#include <ostream>

namespace tempoweave {

Time Time::parse(std::string_view text) {
  const std::string_view original = text;
  auto fail = [&](const char* why) -> Time {
    throw ParseError("invalid time literal '" + std::string(original) + "': " + why);
  };

  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  const auto dot = text.find('.');
  const std::string_view whole = text.substr(0, dot);
  const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty() && frac.empty())
    return fail("no digits");
  if (dot != std::string_view::npos && frac.empty())
    return fail("missing fractional digits");
  if (frac.size() > static_cast<std::size_t>(kFractionDigits))
    return fail("more than six fractional digits");

  std::int64_t units = 0;
  if (!whole.empty()) {
    auto [ptr, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), units);
    if (ec != std::errc{} || ptr != whole.data() + whole.size())
      return fail("not a decimal number");
  }
  if (units > std::numeric_limits<std::int64_t>::max() / kTicksPerUnit - 1)
    return fail("out of range");

  std::int64_t fraction = 0;
  for (char c : frac) {
    if (c < '0' || c > '9')
      return fail("not a decimal number");
    fraction = fraction * 10 + (c - '0');
  }
  for (std::size_t i = frac.size(); i < static_cast<std::size_t>(kFractionDigits); ++i)
    fraction *= 10;

  const std::int64_t ticks = units * kTicksPerUnit + fraction;
  return from_ticks(negative ? -ticks : ticks);
}

std::string Time::to_string() const {
  const bool negative = ticks_ < 0;
  // Magnitude in unsigned space so INT64_MIN does not overflow.
  const std::uint64_t magnitude =
      negative ? std::uint64_t(0) - static_cast<std::uint64_t>(ticks_) : static_cast<std::uint64_t>(ticks_);
  const std::uint64_t scale = static_cast<std::uint64_t>(kTicksPerUnit);
  std::string out = negative ? "-" : "";
  out += std::to_string(magnitude / scale);
  std::uint64_t frac = magnitude % scale;
  if (frac != 0) {
    std::string digits = std::to_string(frac);
    digits.insert(0, static_cast<std::size_t>(kFractionDigits) - digits.size(), '0');
    while (digits.back() == '0')
      digits.pop_back();
    out += '.';
    out += digits;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, Time t) { return os << t.to_string(); }

} // namespace tempoweave
