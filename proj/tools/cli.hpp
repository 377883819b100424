#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ultracl::cli {

enum ExitCode : int { Ok = 0, Violations = 1, InputError = 2, Unsupported = 3 };

/// Runs one command; `args` excludes the program name. Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ultracl::cli
