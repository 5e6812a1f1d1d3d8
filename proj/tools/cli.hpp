#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace skorokhod::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kParseError = 2, kIoError = 3 };

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace skorokhod::cli
