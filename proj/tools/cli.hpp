// Command line front end. Kept separate from main() so the whole surface,
// including exit codes, can be driven in-process by the tests.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sqf::tools {

// Runs one command; `args` excludes the program name. Normal output goes to
// `out`, diagnostics to `err`. Returns the exit code: 0 success,
// 1 verification failure, 2 usage error.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace sqf::tools
