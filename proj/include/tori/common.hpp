#pragma once

#include <stdexcept>
#include <string>

namespace tori {

// Thrown when a computation would exceed a configured budget.  The message
// names the budget and the offending size so callers (and the CLI) can report
// actionable limits.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown on malformed textual input (cycle notation, labels, spec files).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tunable limits.  Defaults match the documented contracts; every entry can be
// raised per call where a budget parameter is accepted.
struct Budgets {
  long long subgroupOrderLimit = 400;   // allSubgroups refuses larger groups
  long long barUnknownLimit = 200000;   // h2 / sha2omega: (|K|-1)^2 * rank
  long long h3OrderLimit = 16;          // hnTrivialZ / resKernelHnZ at n = 3
  long long elementLimit = 1000000;     // permutation group materialization
  long long cochainAmbientLimit = 2500; // kernel-of-restriction coordinate dim
};

}  // namespace tori
