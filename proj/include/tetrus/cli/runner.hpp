#pragma once

#include <string>
#include <vector>

#include "tetrus/cli/report.hpp"
#include "tetrus/cli/script.hpp"
#include "tetrus/cover_tower.hpp"

namespace tetrus::cli {

// Exit statuses of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

// One row of the expected-value table: tab-separated key, value, note.
struct Expectation {
  std::string key;
  std::string value;
  std::string note;
  int line = 0;
};

std::string default_expected_path();
// Throws Error with the offending line on malformed input.
std::vector<Expectation> load_expectations(const std::string& path);

struct RunOptions {
  int search_bound = 2;
  std::string expected_path = default_expected_path();
};

struct RunResult {
  Report report;
  int exit_code = kExitOk;
};

// Executes the statements in order. Declarations produce no output;
// analyze, surface and verify statements each add report sections. A failing
// stage adds an "error" section naming the statement and the violated
// invariant and stops the run with kExitMismatch.
RunResult run(const Script& script, const RunOptions& options);

// Sections for a pipeline run, and a comparison against the expectations.
// Returns true iff every expectation is met.
void add_pipeline_sections(Report& report, const cover::CoverReport& cover);
bool add_verification_section(Report& report, const cover::CoverReport& cover,
                              const std::vector<Expectation>& expected);

// Edge list of the closed fibre surface with the projected link curves and
// the spin witness, for external plotting.
std::string surface_edge_list(int search_bound);

}  // namespace tetrus::cli
