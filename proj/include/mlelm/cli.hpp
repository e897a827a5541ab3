#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mlelm::cli {

enum ExitCode : int { success = 0, operational_error = 1, spec_mismatch = 2 };

/**
 * Runs one command line (program name excluded), e.g.
 * {"stats", "--dataset", "emotions.arff", "--labels", "6"}.
 *
 * Primary output goes to `out` and is deterministic for fixed flags; timing
 * lines and diagnostics go to `err`. Returns the process exit code.
 */
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace mlelm::cli
