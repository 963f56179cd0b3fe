#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace goldman::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace goldman::cli
