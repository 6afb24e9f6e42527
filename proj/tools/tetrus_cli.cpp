#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tetrus/cli/runner.hpp"
#include "tetrus/cli/script.hpp"
#include "tetrus/cli/selftest.hpp"

namespace {

using namespace tetrus::cli;

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

bool write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return static_cast<bool>(std::cout);
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tetrus: covers, amalgams and fibred surfaces for the tetrus tangle"};
  std::string script_path;
  bool verify = false;
  bool selftest = false;
  int search_bound = 2;
  std::string format = "text";
  std::string out_path;
  std::string export_path;
  std::string expected_path = default_expected_path();
  std::uint64_t seed = SelftestOptions{}.seed;

  app.add_option("--script", script_path, "script file to run ('-' reads standard input)");
  app.add_flag("--verify", verify, "run the theorem pipeline and compare against the expected table");
  app.add_option("--search-bound", search_bound, "chords per polygon allowed in the spin search")
      ->check(CLI::Range(0, 8));
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "structured"}));
  app.add_flag("--selftest", selftest, "run the randomized property suites");
  app.add_option("--seed", seed, "seed for --selftest");
  app.add_option("--out", out_path, "write the report here instead of standard output");
  app.add_option("--expected", expected_path, "expected-value table for verification");
  app.add_option("--export", export_path, "write the fibre surface and its curves as an edge list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (script_path.empty() && !verify && !selftest && export_path.empty()) {
    std::cerr << app.help();
    return kExitUsage;
  }

  Script script;
  if (!script_path.empty()) {
    std::string text;
    if (script_path == "-") {
      std::ostringstream ss;
      ss << std::cin.rdbuf();
      text = ss.str();
    } else if (!read_file(script_path, text)) {
      std::cerr << "cannot read script " << script_path << '\n';
      return kExitUsage;
    }
    ParseResult parsed = parse_script(text);
    if (!parsed.ok()) {
      for (const auto& d : parsed.diagnostics) std::cerr << script_path << ':' << d.str() << '\n';
      return kExitUsage;
    }
    script = std::move(parsed.script);
  }
  if (verify) script.statements.push_back({{0, 0}, VerifyTheorem{}});

  RunResult result = run(script, {search_bound, expected_path});
  if (selftest) {
    const auto suites = run_selftest({seed});
    add_selftest_section(result.report, suites);
    for (const auto& s : suites) {
      if (!s.passed && result.exit_code == kExitOk) result.exit_code = kExitMismatch;
    }
  }

  if (!export_path.empty() && !write_output(export_path, surface_edge_list(search_bound))) {
    std::cerr << "cannot write " << export_path << '\n';
    return kExitUsage;
  }
  const std::string text = format == "structured" ? result.report.structured() : result.report.text();
  if (!write_output(out_path, text)) {
    std::cerr << "cannot write " << out_path << '\n';
    return kExitUsage;
  }
  return result.exit_code;
}
