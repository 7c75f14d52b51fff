#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace retrialq {

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  std::string detail;
  double seconds;
};

/// Runs the full cross-validation suite (closed-form oracles, decomposition
/// identity, gamma-ratio checks, refinement measurement, simulator
/// cross-check, trend checks, Monte Carlo comparison, series-engine oracle).
/// One [PASS]/[FAIL] line per criterion goes to `out` as it completes.
std::vector<CriterionResult> run_acceptance_suite(std::ostream& out);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace retrialq
