#include "tempoweave/check.hpp"

#include "tempoweave/error.hpp"
#include "tempoweave/formula_text.hpp"

#include <bit>
#include <random>

namespace tempoweave::check {

std::size_t Bits::count() const {
  std::size_t c = 0;
  for (auto w : w_)
    c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

Bits Bits::operator~() const {
  Bits out = *this;
  for (auto& w : out.w_)
    w = ~w;
  if (n_ % 64 != 0 && !out.w_.empty())
    out.w_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  return out;
}

Bits& Bits::operator&=(const Bits& o) {
  for (std::size_t i = 0; i < w_.size(); ++i)
    w_[i] &= o.w_[i];
  return *this;
}

Bits& Bits::operator|=(const Bits& o) {
  for (std::size_t i = 0; i < w_.size(); ++i)
    w_[i] |= o.w_[i];
  return *this;
}

SatTable::SatTable(const WordSpace& words, OracleOptions options) : words_(words), options_(options) {
  const std::size_t n = words.size();
  for (std::size_t k = 0; k <= words.max_length(); ++k) {
    Bits b(n);
    std::vector<std::int32_t> s(n);
    for (std::size_t w = 0; w < n; ++w) {
      b.set(w, words.node(w).length > k);
      s[w] = words.suffix(w, k);
    }
    longer_.push_back(std::move(b));
    suffix_.push_back(std::move(s));
  }
}

Bits SatTable::shifted(const Bits& b, std::size_t k) const {
  Bits out(b.size());
  if (k >= suffix_.size())
    return out;
  const auto& s = suffix_[k];
  for (std::size_t w = 0; w < b.size(); ++w)
    if (s[w] >= 0 && b.test(static_cast<std::size_t>(s[w])))
      out.set(w);
  return out;
}

Bits SatTable::eval(const Formula& f) {
  using K = FormulaKind;
  const std::size_t n = words_.size();
  const std::size_t len = words_.max_length();
  switch (f.kind()) {
  case K::Atom:
  case K::Prophecy: {
    const std::string key = to_string(f);
    if (auto it = leaves_.find(key); it != leaves_.end())
      return it->second;
    Bits b(n);
    for (std::size_t w = 0; w < n; ++w)
      b.set(w, sat(words_.word(w), f, options_));
    return leaves_.emplace(key, b).first->second;
  }
  case K::True:
    return ~Bits(n);
  case K::False:
    return Bits(n);
  case K::Not:
    return ~eval(f.child());
  case K::Or:
    return eval(f.left()) | eval(f.right());
  case K::And:
    return eval(f.left()) & eval(f.right());
  case K::Implies:
    return ~eval(f.left()) | eval(f.right());
  case K::Next:
    return shifted(eval(f.child()), 1);
  case K::WeakNext:
    return ~longer_[1] | shifted(eval(f.child()), 1);
  case K::Until: {
    const Bits a = eval(f.left());
    const Bits b = eval(f.right());
    Bits out(n);
    Bits prefix = ~Bits(n);
    for (std::size_t i = 0; i < len; ++i) {
      out |= shifted(b, i) & prefix;
      prefix &= shifted(a, i);
    }
    return out;
  }
  case K::Finally: {
    const Bits c = eval(f.child());
    Bits out(n);
    for (std::size_t i = 0; i < len; ++i)
      out |= shifted(c, i);
    return out;
  }
  case K::Globally: {
    const Bits c = eval(f.child());
    Bits out = ~Bits(n);
    for (std::size_t i = 0; i < len; ++i)
      out &= ~longer_[i] | shifted(c, i);
    return out;
  }
  default:
    throw PreconditionError("sat table: unsupported node " + std::string(kind_name(f.kind())));
  }
}

UnrollingReport check_unrolling(const std::vector<Formula>& operands, const WordSpace& words, Execution execution,
                                std::size_t samples, std::uint64_t seed) {
  UnrollingReport report;
  report.formulas = operands.size();
  SatTable table(words);
  const std::size_t len = words.max_length();

  std::map<std::vector<std::uint64_t>, std::size_t> class_of;
  std::vector<std::vector<Bits>> gathered; // [class][k]: operand read at the k-th suffix
  for (const auto& f : operands) {
    const Bits b = table.eval(f);
    const bool fresh = class_of.emplace(b.blocks(), gathered.size()).second;
    if (fresh) {
      std::vector<Bits> g;
      for (std::size_t k = 0; k < len; ++k)
        g.push_back(table.shifted(b, k));
      gathered.push_back(std::move(g));
    }
  }
  const std::size_t classes = gathered.size();
  report.classes = classes;
  report.pairs = static_cast<std::uint64_t>(classes) * classes;

  const std::size_t blocks = Bits(words.size()).blocks().size();
  const auto& more_than_one = table.longer_than(1).blocks();
  // lhs: the until clause. rhs: b | (a & X(a U b)), with X read through one
  // suffix link and the until clause applied at that suffix.
  auto pair_mismatches = [&](std::size_t a, std::size_t b) {
    const auto& A = gathered[a];
    const auto& B = gathered[b];
    std::uint64_t bad = 0;
    for (std::size_t w = 0; w < blocks; ++w) {
      std::uint64_t lhs = 0, prefix = ~std::uint64_t{0};
      for (std::size_t i = 0; i < len; ++i) {
        lhs |= B[i].blocks()[w] & prefix;
        prefix &= A[i].blocks()[w];
      }
      std::uint64_t later = 0;
      prefix = ~std::uint64_t{0};
      for (std::size_t i = 0; i + 1 < len; ++i) {
        later |= B[i + 1].blocks()[w] & prefix;
        prefix &= A[i + 1].blocks()[w];
      }
      const std::uint64_t rhs = B[0].blocks()[w] | (A[0].blocks()[w] & more_than_one[w] & later);
      bad += static_cast<std::uint64_t>(std::popcount(lhs ^ rhs));
    }
    return bad;
  };

  std::uint64_t mismatches = 0;
  const auto n = static_cast<std::int64_t>(classes);
  if (execution == Execution::Serial) {
    for (std::int64_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < classes; ++b)
        mismatches += pair_mismatches(static_cast<std::size_t>(a), b);
  } else {
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : mismatches)
    for (std::int64_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < classes; ++b)
        mismatches += pair_mismatches(static_cast<std::size_t>(a), b);
  }
  report.mismatches = mismatches;

  // Word-by-word evaluation of sampled pairs with the reference relation.
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, operands.empty() ? 0 : operands.size() - 1);
  for (std::size_t s = 0; s < samples && !operands.empty(); ++s) {
    const std::size_t ia = pick(rng), ib = pick(rng);
    const Formula& a = operands[ia];
    const Formula& b = operands[ib];
    const Formula u = Formula::until(a, b);
    const Formula lhs = expand_sugar(u);
    const Formula rhs = expand_sugar(Formula::disjunction(b, Formula::conjunction(a, Formula::next(u))));
    const Bits kernel = table.eval(u);
    for (std::size_t w = 0; w < words.size(); ++w) {
      const bool l = sat(words.word(w), lhs);
      const bool r = sat(words.word(w), rhs);
      if (l != r || l != kernel.test(w))
        ++report.sample_mismatches;
    }
    ++report.sampled;
  }
  return report;
}

} // namespace tempoweave::check
