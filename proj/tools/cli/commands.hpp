#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace commcalc::cli {

/// Exit codes: 0 success or all checks pass, 1 a check fails, 2 usage or
/// input error.
int runCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; `args` excludes the program name.
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace commcalc::cli
