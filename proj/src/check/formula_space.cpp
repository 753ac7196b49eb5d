#include "tempoweave/check.hpp"

#include "tempoweave/error.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace tempoweave::check {

namespace {

constexpr std::uint64_t kUnary = 5;
constexpr std::uint64_t kBinary = 4;

Formula unary(std::uint64_t op, Formula f) {
  switch (op) {
  case 0:
    return Formula::negation(std::move(f));
  case 1:
    return Formula::next(std::move(f));
  case 2:
    return Formula::weak_next(std::move(f));
  case 3:
    return Formula::finally(std::move(f));
  default:
    return Formula::globally(std::move(f));
  }
}

Formula binary(std::uint64_t op, Formula a, Formula b) {
  switch (op) {
  case 0:
    return Formula::disjunction(std::move(a), std::move(b));
  case 1:
    return Formula::conjunction(std::move(a), std::move(b));
  case 2:
    return Formula::implication(std::move(a), std::move(b));
  default:
    return Formula::until(std::move(a), std::move(b));
  }
}

} // namespace

std::vector<Formula> standard_leaves() {
  std::vector<Formula> out{Formula::atom("p"), Formula::atom("q"), Formula::constant(true),
                           Formula::constant(false)};
  for (std::int64_t lo = 0; lo <= 3; ++lo)
    for (std::int64_t hi = lo + 1; hi <= 3; ++hi)
      for (const char* name : {"p", "q"})
        for (Polarity pol : {Polarity::Positive, Polarity::Negated})
          out.push_back(Formula::prophecy(Time::units(lo), Time::units(hi), AtomRef{{}, name}, pol));
  return out;
}

std::vector<Formula> atom_leaves(const std::vector<std::string>& names) {
  std::vector<Formula> out;
  for (const auto& n : names)
    out.push_back(Formula::atom(n));
  return out;
}

FormulaSpace::FormulaSpace(std::vector<Formula> leaves, int depth) : leaves_(std::move(leaves)), depth_(depth) {
  if (leaves_.empty())
    throw PreconditionError("a formula space needs at least one leaf");
  if (depth < 1 || depth > kMaxDepth)
    throw PreconditionError("formula space depth must be between 1 and " + std::to_string(kMaxDepth));
  sizes_ = {0, leaves_.size()};
  for (int d = 2; d <= depth; ++d) {
    const std::uint64_t s = sizes_.back();
    sizes_.push_back(leaves_.size() + kUnary * s + kBinary * s * s);
  }
}

Formula FormulaSpace::at(std::uint64_t index, int depth) const {
  if (depth < 1 || depth > depth_ || index >= sizes_[depth])
    throw PreconditionError("formula index out of range");
  if (index < leaves_.size())
    return leaves_[index];
  index -= leaves_.size();
  const std::uint64_t s = sizes_[depth - 1];
  if (index < kUnary * s)
    return unary(index / s, at(index % s, depth - 1));
  index -= kUnary * s;
  const std::uint64_t op = index / (s * s);
  index %= s * s;
  return binary(op, at(index / s, depth - 1), at(index % s, depth - 1));
}

std::vector<Formula> FormulaSpace::all() const {
  std::vector<Formula> out;
  out.reserve(size());
  for (std::uint64_t i = 0; i < size(); ++i)
    out.push_back(at(i));
  return out;
}

std::vector<std::uint64_t> all_indices(const FormulaSpace& space) {
  std::vector<std::uint64_t> out(space.size());
  for (std::uint64_t i = 0; i < out.size(); ++i)
    out[i] = i;
  return out;
}

std::vector<std::uint64_t> sample_indices(const FormulaSpace& space, std::size_t count, std::uint64_t seed) {
  if (count >= space.size())
    return all_indices(space);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, space.size() - 1);
  std::set<std::uint64_t> chosen;
  while (chosen.size() < count)
    chosen.insert(pick(rng));
  return {chosen.begin(), chosen.end()};
}

} // namespace tempoweave::check
