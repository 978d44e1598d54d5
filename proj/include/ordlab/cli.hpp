#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ordlab {

enum ExitCode { kExitOk = 0, kExitUsage = 1, kExitParse = 2, kExitBudget = 3, kExitVerify = 4 };

// args excludes the program name
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ordlab
