#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tcx {

// Runs one CLI invocation. JSON reports go to `out`, diagnostics to `err`.
// Exit code: 0 pass/success, 1 analysis failure, 2 input/usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace tcx
