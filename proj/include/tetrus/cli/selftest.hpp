#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tetrus/cli/report.hpp"

namespace tetrus::cli {

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  bool passed = true;
  std::string witness;  // smallest failing input found, empty on success
};

struct SelftestOptions {
  std::uint64_t seed = 0x5eed7e7a;
};

// Randomized property suites over every module. Deterministic for a fixed
// seed. A failing suite reports a counterexample shrunk by deleting letters
// or generators while the property still fails.
std::vector<SuiteResult> run_selftest(const SelftestOptions& options = {});

void add_selftest_section(Report& report, const std::vector<SuiteResult>& results);

}  // namespace tetrus::cli
