#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hyplatt {

// Dispatches one CLI invocation.  args excludes the program name.
// Returns 0 on success, 2 on usage error, 3 on data/validation error,
// 4 on numeric-contract error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hyplatt
