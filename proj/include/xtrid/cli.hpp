#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace xtrid::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kValidation = 2 };

// Runs one subcommand. args excludes the program name. Structured output goes
// to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace xtrid::cli
