// SPDX-License-Identifier: MIT
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace starwalk {

/// Run the command-line driver on the given arguments (program name
/// excluded), writing primary output to `out` and diagnostics to `err`.
/// Returns the process exit code: 0 on success, 1 on runtime or
/// verification failure, 2 on usage / configuration errors.
int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err);

}  // namespace starwalk
