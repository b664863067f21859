#pragma once

#include <iosfwd>

namespace qbm::cli {

// Parses the command line, runs or validates the configuration and returns
// the process exit status: 0 success, 1 usage error, 2 invalid configuration,
// 3 run aborted by a diagnostic.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qbm::cli
