// Acceptance gate: runs the end-to-end criteria and prints one verdict line
// per criterion, plus the overall runtime budget check.

#include "grt/selftest.hpp"

#include <cstdio>

int main() {
  grt::SelftestResult res = grt::run_selftest(/*verbose=*/true);
  int idx = 0;
  for (const auto& c : res.criteria) {
    ++idx;
    std::printf("criterion %2d: %s  %-55s value=%.4g threshold=%.4g (%.1fs)%s%s\n", idx,
                c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value, c.threshold, c.seconds,
                c.detail.empty() ? "" : "  ", c.detail.c_str());
  }
  const double budget = 900.0;
  bool runtime_ok = res.total_seconds <= budget;
  std::printf("criterion %2d: %s  selftest end-to-end runtime%29s value=%.4g threshold=%.4g\n",
              idx + 1, (runtime_ok && res.all_pass) ? "PASS" : "FAIL", "", res.total_seconds,
              budget);
  bool ok = res.all_pass && runtime_ok;
  std::printf("%s (%.1f s total)\n", ok ? "ALL CRITERIA PASS" : "FAILURES PRESENT",
              res.total_seconds);
  return ok ? 0 : 1;
}
