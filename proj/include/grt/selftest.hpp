#pragma once

#include <string>
#include <vector>

// End-to-end acceptance suite: one entry per criterion, each reporting the
// worst observed metric against its threshold.

namespace grt {

struct CriterionResult {
  std::string name;
  double value = 0;     // headline metric (worst case observed)
  double threshold = 0; // pass iff value <= threshold (and sub-checks hold)
  bool pass = false;
  double seconds = 0;
  std::string detail;
};

struct SelftestResult {
  std::vector<CriterionResult> criteria;
  double total_seconds = 0;
  bool all_pass = false;
};

// Runs criteria 1-10; `verbose` streams one line per criterion to stderr as
// they finish.
SelftestResult run_selftest(bool verbose = false);

} // namespace grt
