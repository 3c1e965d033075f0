#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tnbsd::cli {

/// Runs the command line `args` (without the program name). Primary output
/// goes to `out` unless --output names a file; diagnostics go to `err`.
/// Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tnbsd::cli
