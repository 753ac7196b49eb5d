#include "tempoweave/check.hpp"

#include "tempoweave/error.hpp"

#include <algorithm>
#include <map>

namespace tempoweave::check {

namespace {

Event make_event(std::uint8_t letter, Time t) {
  Event e;
  e.timestamp = t;
  if (letter & 1U)
    e.propositions.insert("p");
  if (letter & 2U)
    e.propositions.insert("q");
  return e;
}

using Key = std::vector<std::pair<std::uint8_t, Time>>;

} // namespace

WordSpace::WordSpace(std::vector<Time> times, std::size_t max_length) : max_length_(max_length) {
  if (times.empty() || max_length == 0)
    throw PreconditionError("a word space needs timestamps and a positive length");
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  std::map<Key, std::int32_t> index;
  std::vector<Key> keys;
  Key path;
  std::vector<Event> events;
  // Preorder walk: a node is emitted before its extensions.
  auto visit = [&](auto&& self, std::int32_t parent, std::size_t first_time) -> void {
    for (std::size_t ti = first_time; ti < times.size(); ++ti) {
      for (std::uint8_t letter = 0; letter < 4; ++letter) {
        const auto id = static_cast<std::int32_t>(nodes_.size());
        path.emplace_back(letter, times[ti]);
        events.push_back(make_event(letter, times[ti]));
        nodes_.push_back({parent, letter, static_cast<std::uint8_t>(path.size()), times[ti], events.back()});
        words_.emplace_back(events);
        index.emplace(path, id);
        keys.push_back(path);
        if (path.size() < max_length_)
          self(self, id, ti);
        path.pop_back();
        events.pop_back();
      }
    }
  };
  visit(visit, -1, 0);

  suffix1_.resize(nodes_.size(), -1);
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (keys[i].size() > 1)
      suffix1_[i] = index.at(Key(keys[i].begin() + 1, keys[i].end()));
}

WordSpace WordSpace::standard() {
  return WordSpace({Time::units(0), Time::units(1), Time::units(2), Time::units(4)}, 4);
}

std::int32_t WordSpace::suffix(std::size_t i, std::size_t k) const {
  auto cur = static_cast<std::int32_t>(i);
  for (std::size_t s = 0; s < k && cur >= 0; ++s)
    cur = suffix1_[static_cast<std::size_t>(cur)];
  return cur;
}

} // namespace tempoweave::check
