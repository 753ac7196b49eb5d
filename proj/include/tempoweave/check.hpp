#pragma once

#include "tempoweave/dispatch.hpp"
#include "tempoweave/formula.hpp"
#include "tempoweave/monitor.hpp"
#include "tempoweave/oracle.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

// Exhaustive small-instance checkers for the monitor and the oracle.
namespace tempoweave::check {

/// p, q, true, false and every within[l,h] (!)p / (!)q with l < h from
/// {0,1,2,3}: 28 leaves.
std::vector<Formula> standard_leaves();

/// Leaves without constants or prophecies, one atom per name.
std::vector<Formula> atom_leaves(const std::vector<std::string>& names);

/// All formulas of depth at most `depth` built from `leaves` with
/// Not, X, WX, F, G (unary) and |, &, ->, U (binary). Depth 1 is a leaf.
/// Formulas are addressed by index so that spaces too large to store can
/// still be walked or sampled.
class FormulaSpace {
public:
  static constexpr int kMaxDepth = 4;

  /// Throws PreconditionError unless 1 <= depth <= kMaxDepth and leaves is
  /// non-empty.
  FormulaSpace(std::vector<Formula> leaves, int depth);

  int depth() const { return depth_; }
  std::uint64_t size() const { return sizes_[depth_]; }
  std::uint64_t size(int depth) const { return sizes_.at(depth); }
  Formula at(std::uint64_t index) const { return at(index, depth_); }
  Formula at(std::uint64_t index, int depth) const;
  /// Every formula in index order. Only sensible for small spaces.
  std::vector<Formula> all() const;

private:
  std::vector<Formula> leaves_;
  int depth_;
  std::vector<std::uint64_t> sizes_;
};

/// Every word of length 1..max_length over the letters 2^{p,q} with
/// non-decreasing timestamps drawn from `times`, arranged as a prefix trie in
/// preorder. Node i is the word formed by the path from a root to i.
class WordSpace {
public:
  struct Node {
    std::int32_t parent; // -1 for words of length 1
    std::uint8_t letter; // bit 0: p, bit 1: q
    std::uint8_t length;
    Time timestamp;
    Event event;
  };

  /// Throws PreconditionError for an empty time set or max_length 0.
  WordSpace(std::vector<Time> times, std::size_t max_length);

  /// Timestamps {0,1,2,4}, length at most 4: 10416 words.
  static WordSpace standard();

  std::size_t size() const { return nodes_.size(); }
  std::size_t max_length() const { return max_length_; }
  const Node& node(std::size_t i) const { return nodes_[i]; }
  const Word& word(std::size_t i) const { return words_[i]; }
  /// Node of the word with its first `k` events dropped, or -1 when the word
  /// has at most k events.
  std::int32_t suffix(std::size_t i, std::size_t k) const;

private:
  std::vector<Node> nodes_;
  std::vector<Word> words_;
  std::vector<std::int32_t> suffix1_;
  std::size_t max_length_;
};

struct CheckOptions {
  bool prophecy_includes_now = false;
  /// Number of mismatch examples kept in a report.
  std::size_t max_examples = 5;
};

struct Mismatch {
  Formula formula;
  std::size_t word;
  Verdict monitor;
  Verdict oracle;
};

struct StabilityViolation {
  Formula formula;
  std::size_t word;
  std::string detail;
};

struct EquivalenceReport {
  std::uint64_t formulas = 0;
  std::uint64_t steps = 0;
  std::uint64_t mismatches = 0;
  std::uint64_t stability_violations = 0;
  std::vector<Mismatch> mismatch_examples;
  std::vector<StabilityViolation> stability_examples;

  void merge(const EquivalenceReport& other, std::size_t max_examples);
};

/// Runs the monitor along every path of the trie and compares each verdict
/// with finite_verdict(word, expand_sugar(f)). Also checks that a final
/// verdict never changes afterwards and that the obligation then is the
/// matching constant.
EquivalenceReport check_formula(const Formula& f, const WordSpace& words, const CheckOptions& options = {});

/// check_formula for every index in `indices` of `space`.
EquivalenceReport check_equivalence(const FormulaSpace& space, const std::vector<std::uint64_t>& indices,
                                    const WordSpace& words, Execution execution,
                                    const CheckOptions& options = {});

/// All indices of the space in order.
std::vector<std::uint64_t> all_indices(const FormulaSpace& space);

/// `count` distinct indices drawn uniformly with a seeded generator, sorted.
std::vector<std::uint64_t> sample_indices(const FormulaSpace& space, std::size_t count, std::uint64_t seed);

/// One bit per word of a WordSpace.
class Bits {
public:
  Bits() = default;
  explicit Bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i, bool v = true) {
    if (v)
      w_[i / 64] |= std::uint64_t{1} << (i % 64);
    else
      w_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
  }
  std::size_t count() const;
  const std::vector<std::uint64_t>& blocks() const { return w_; }
  std::vector<std::uint64_t>& blocks() { return w_; }

  Bits operator~() const;
  Bits& operator&=(const Bits& o);
  Bits& operator|=(const Bits& o);
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  friend bool operator==(const Bits&, const Bits&) = default;

private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

/// Two-valued satisfaction of formulas over a whole WordSpace, one bit per
/// word. Leaves are evaluated with `sat`; operators combine the children's
/// vectors following the satisfaction clauses, with X and U read through
/// the trie's suffix links.
class SatTable {
public:
  SatTable(const WordSpace& words, OracleOptions options = {});

  /// Leaf vectors are cached, so concurrent calls need external locking.
  Bits eval(const Formula& f);
  /// bit w set iff the k-th suffix of w exists and is set in `b`.
  Bits shifted(const Bits& b, std::size_t k) const;
  /// bit w set iff w has more than k events.
  const Bits& longer_than(std::size_t k) const { return longer_.at(k); }
  const WordSpace& words() const { return words_; }

private:
  const WordSpace& words_;
  OracleOptions options_;
  std::vector<Bits> longer_;
  std::vector<std::vector<std::int32_t>> suffix_;
  std::map<std::string, Bits> leaves_;
};

struct UnrollingReport {
  std::uint64_t formulas = 0;
  std::uint64_t classes = 0;
  std::uint64_t pairs = 0;
  std::uint64_t mismatches = 0;
  std::uint64_t sampled = 0;
  std::uint64_t sample_mismatches = 0;
};

/// Checks sat(w, a U b) = sat(w, b | (a & X(a U b))) for every pair of
/// `operands` and every word. Operands with the same satisfaction vector
/// are merged first. `samples` random pairs are also evaluated word by word
/// with `sat` on the expanded formulas, against the kernel.
UnrollingReport check_unrolling(const std::vector<Formula>& operands, const WordSpace& words, Execution execution,
                                std::size_t samples = 0, std::uint64_t seed = 1);

} // namespace tempoweave::check
