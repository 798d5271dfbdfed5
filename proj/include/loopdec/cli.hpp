#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace loopdec {

/// Runs one CLI invocation (args exclude the program name).
/// Exit codes: 0 success, 1 failed mathematical hypothesis, 2 bad input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace loopdec
