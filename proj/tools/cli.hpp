#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kobdd::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kSuccess = 0,
    kCheckFailed = 1,
    kUsageError = 2,
};

/// Runs the command line `args` (without the program name). Reports go to
/// `out` unless --out redirects them; diagnostics go to `err`.
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

/// "2..64", "8..1024*2" (geometric), "1,3,5" and combinations thereof.
std::vector<int> parse_int_list(std::string const& text);

} // namespace kobdd::cli
