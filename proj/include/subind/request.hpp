#pragma once

#include <optional>
#include <string>

#include "subind/report.hpp"

namespace subind::request {

// One validated workbench request. `task` is canonical; the long aliases
// "compatibility" and "theorem-suite" are folded during parsing.
struct WorkbenchRequest {
  std::string kind;
  std::string task;
  SearchBudget budget;
  std::optional<double> tol;       // numeric gates for operator-algebra runs
  std::optional<int> max_iter;     // feasibility iteration cap
  report::json payload;
};

// Parses the request text and validates the payload against the kind's
// schema, including structural invariants (prime modulus, lattice laws,
// unitary embeddings), before any search runs. Violations are DomainErrors
// whose message starts with the JSON path of the offending field.
WorkbenchRequest parse_request(const std::string& text);

struct RunOutcome {
  report::json body;
  // 0 for decided or audited outcomes, 2 when a verdict is undecided,
  // unknown, or inconclusive. Errors are thrown, not encoded.
  int exit_code = 0;
};

// Executes one request. Decided outcomes serialize byte-identically across
// runs and thread counts.
RunOutcome run(const WorkbenchRequest& req, int jobs = 1);

}  // namespace subind::request
