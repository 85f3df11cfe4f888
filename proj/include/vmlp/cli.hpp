#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vmlp {

// Dispatches the vmlp command line (args excludes the program name).
// Returns 0 on success, 1 on validation/usage errors, 2 on numeric failures.
// Data goes to `out` or to the declared output files; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace vmlp
