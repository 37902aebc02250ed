#pragma once

#include <iosfwd>

namespace tripec {

// Runs one subcommand. The JSON report goes to `out` (and to --out when given);
// diagnostics and progress go to `err`. Returns 0 when every check passes, 1
// when a check fails, 2 on usage or input errors.
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tripec
