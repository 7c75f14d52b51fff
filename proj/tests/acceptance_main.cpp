// Acceptance suite runner: one pass/fail line per criterion, nonzero exit
// when any criterion fails.
#include <iostream>

#include "retrialq/validation.hpp"

int main() {
  const auto results = retrialq::run_acceptance_suite(std::cout);
  int failed = 0;
  for (const auto& r : results)
    if (!r.passed) ++failed;
  if (failed > 0) {
    std::cout << failed << " of " << results.size() << " criteria failed\n";
    return 1;
  }
  std::cout << "all " << results.size() << " criteria passed\n";
  return 0;
}
