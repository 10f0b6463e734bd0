#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace freemv::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2 };

/// Runs one subcommand. Results go to `out` as JSON, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace freemv::cli
