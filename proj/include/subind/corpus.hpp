#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subind/report.hpp"

namespace subind::corpus {

// One documented claim run against the brute-force machinery. `expected`
// states the claim as documented, `observed` what the sweep actually saw;
// `agreement` is "agree", "contradict", or "undecided" (budget ran out).
// Contradictions are findings, not failures: the details carry re-checkable
// counterexamples.
struct ClaimResult {
  std::string id;
  std::string statement;
  std::string expected;
  std::string observed;
  std::string agreement;
  std::uint64_t instances = 0;
  report::json details = report::json::object();
};

// Runs every claim in a fixed order. Verdicts and serialized witnesses are
// schedule-independent, so the assembled report is byte-identical for any
// `jobs`.
std::vector<ClaimResult> run_suite(int jobs);

report::json suite_report(const std::vector<ClaimResult>& claims);

}  // namespace subind::corpus
