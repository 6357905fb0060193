#pragma once

#include <ostream>

namespace sepkit::cli {

enum ExitCode : int { kSuccess = 0, kFailure = 1, kValidation = 2, kNonConvergence = 3 };

/// Entry point of the `sepkit` tool. Reports go to `out` as JSON lines;
/// diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sepkit::cli
