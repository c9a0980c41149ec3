#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sphier::cli {

// Parse and execute a command line (argv without the program name).  Tables
// go to `out`; diagnostics, timings, and summaries to `err`.  Exit code:
// 0 = all asserted checks passed, 1 = computation error or failed check,
// 2 = usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sphier::cli
