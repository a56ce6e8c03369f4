#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spikeslab {

// Parses argv-style arguments (program name excluded), runs the requested
// subcommand, and writes reports to the configured output paths.  Returns
// the process exit code: 0 on success, 2 for invalid flags or input data,
// 3 for numerical failures.  Status lines go to `out`, diagnostics to
// `err`; nothing is written to either stream on the happy path except the
// output-file notices.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace spikeslab
