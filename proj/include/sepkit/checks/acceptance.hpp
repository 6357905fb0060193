#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace sepkit::checks {

enum class Relation { Equal, AtMost, AtLeast };

std::string_view to_string(Relation r);

/// One measured quantity against its expectation. Equal passes when
/// |measured - expected| <= tolerance; AtMost when measured <= expected;
/// AtLeast when measured >= expected.
struct CheckResult {
  std::string name;
  double measured;
  double expected;
  double tolerance;
  Relation relation;
  bool pass;
};

struct SuiteReport {
  std::string suite;
  int criterion;
  std::vector<CheckResult> checks;
  double seconds = 0;
  double time_limit = 0;

  bool pass() const;
};

struct AcceptanceOptions {
  std::uint64_t seed = 0;
  int threads = 1;
  std::function<void(const std::string& suite, const CheckResult&)> on_check;  ///< streamed as checks finish
};

/// Suites in criterion order: isotropic, prop41, certify, maxent, ghz,
/// qubit-region, qudit, hull, witness, properties.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite.
SuiteReport run_suite(std::string_view name, const AcceptanceOptions& options = {});

nlohmann::json to_json(const std::string& suite, const CheckResult& c);

}  // namespace sepkit::checks
