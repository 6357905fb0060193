// Runs acceptance suites and prints one PASS/FAIL line per criterion.
//
//   sepkit_acceptance [suite...] [--seed N] [--threads N] [--expected-failure CHECK]
//
// With --expected-failure the exit status is zero only if every named check
// fails and every other check passes.

#include <algorithm>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sepkit/checks/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"sepkit acceptance criteria"};
  std::vector<std::string> suites;
  std::vector<std::string> expected_failures;
  std::uint64_t seed = 0;
  int threads = 1;
  app.add_option("suites", suites, "suites to run (default: all)");
  app.add_option("--seed", seed);
  app.add_option("--threads", threads);
  app.add_option("--expected-failure", expected_failures, "check name known to fail");
  CLI11_PARSE(app, argc, argv);
  if (suites.empty()) suites = sepkit::checks::suite_names();
  const std::set<std::string> expected(expected_failures.begin(), expected_failures.end());

  bool ok = true;
  for (const auto& name : suites) {
    sepkit::checks::AcceptanceOptions options;
    options.seed = seed;
    options.threads = threads;
    const sepkit::checks::SuiteReport report = sepkit::checks::run_suite(name, options);
    std::printf("criterion %2d %-13s %s  (%zu checks, %.3f s)\n", report.criterion, report.suite.c_str(),
                report.pass() ? "PASS" : "FAIL", report.checks.size(), report.seconds);
    std::set<std::string> seen_failing;
    for (const auto& c : report.checks) {
      if (c.pass) {
        if (expected.count(c.name)) {
          std::printf("    unexpected pass: %s\n", c.name.c_str());
          ok = false;
        }
        continue;
      }
      const bool known = expected.count(c.name) > 0;
      std::printf("    %s: %s  measured %.9g, expected %s %.9g +/- %.3g\n", known ? "known deviation" : "failed",
                  c.name.c_str(), c.measured, std::string(sepkit::checks::to_string(c.relation)).c_str(), c.expected,
                  c.tolerance);
      if (known)
        seen_failing.insert(c.name);
      else
        ok = false;
    }
    for (const auto& e : expected)
      if (!seen_failing.count(e) && std::none_of(report.checks.begin(), report.checks.end(),
                                                 [&](const auto& c) { return c.name == e; })) {
        std::printf("    expected failure not reported: %s\n", e.c_str());
        ok = false;
      }
  }
  return ok ? 0 : 1;
}
