#include "tempoweave/check.hpp"

#include "tempoweave/formula_text.hpp"

#include <exception>

namespace tempoweave::check {

void EquivalenceReport::merge(const EquivalenceReport& other, std::size_t max_examples) {
  formulas += other.formulas;
  steps += other.steps;
  mismatches += other.mismatches;
  stability_violations += other.stability_violations;
  for (const auto& m : other.mismatch_examples)
    if (mismatch_examples.size() < max_examples)
      mismatch_examples.push_back(m);
  for (const auto& s : other.stability_examples)
    if (stability_examples.size() < max_examples)
      stability_examples.push_back(s);
}

EquivalenceReport check_formula(const Formula& f, const WordSpace& words, const CheckOptions& options) {
  EquivalenceReport report;
  report.formulas = 1;
  const Formula core = expand_sugar(f);
  const MonitorOptions mopts{options.prophecy_includes_now};
  const OracleOptions oopts{options.prophecy_includes_now};

  const std::size_t depth = words.max_length() + 1;
  std::vector<Formula> obligation(depth, f);
  std::vector<Verdict> verdict(depth, Verdict::CurrentlyTrue);
  std::vector<Time> time(depth);

  auto unstable = [&](std::size_t word, std::string detail) {
    ++report.stability_violations;
    if (report.stability_examples.size() < options.max_examples)
      report.stability_examples.push_back({f, word, std::move(detail)});
  };

  for (std::size_t n = 0; n < words.size(); ++n) {
    const auto& node = words.node(n);
    const std::size_t len = node.length;
    const Formula& in = len == 1 ? f : obligation[len - 1];
    const Time delta = len == 1 ? Time{} : node.timestamp - time[len - 1];
    const StepResult r = monitor_step(in, delta, node.event, mopts);
    ++report.steps;

    const Verdict expected = finite_verdict(words.word(n), core, oopts);
    if (r.verdict != expected) {
      ++report.mismatches;
      if (report.mismatch_examples.size() < options.max_examples)
        report.mismatch_examples.push_back({f, n, r.verdict, expected});
    }
    if (len > 1 && is_final(verdict[len - 1]) && r.verdict != verdict[len - 1])
      unstable(n, "final verdict " + std::string(to_string(verdict[len - 1])) + " became " +
                      std::string(to_string(r.verdict)));
    if (is_final(r.verdict) && r.next_obligation != Formula::constant(r.verdict == Verdict::True))
      unstable(n, "obligation after " + std::string(to_string(r.verdict)) + " is " +
                      to_string(r.next_obligation, PrintMode::Extended));

    obligation[len] = r.next_obligation;
    verdict[len] = r.verdict;
    time[len] = node.timestamp;
  }
  return report;
}

EquivalenceReport check_equivalence(const FormulaSpace& space, const std::vector<std::uint64_t>& indices,
                                    const WordSpace& words, Execution execution, const CheckOptions& options) {
  EquivalenceReport total;
  if (execution == Execution::Serial) {
    for (std::uint64_t i : indices)
      total.merge(check_formula(space.at(i), words, options), options.max_examples);
    return total;
  }

  std::exception_ptr failure;
  const auto n = static_cast<std::int64_t>(indices.size());
#pragma omp parallel
  {
    EquivalenceReport local;
#pragma omp for schedule(dynamic, 8) nowait
    for (std::int64_t k = 0; k < n; ++k) {
      try {
        local.merge(check_formula(space.at(indices[static_cast<std::size_t>(k)]), words, options),
                    options.max_examples);
      } catch (...) {
#pragma omp critical(tempoweave_check_failure)
        if (!failure)
          failure = std::current_exception();
      }
    }
#pragma omp critical(tempoweave_check_merge)
    total.merge(local, options.max_examples);
  }
  if (failure)
    std::rethrow_exception(failure);
  return total;
}

} // namespace tempoweave::check
