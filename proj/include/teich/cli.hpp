#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace teich::cli {

/// Exit codes: 0 success, 1 usage error, 2 numerical failure or exhausted
/// budget, 3 invalid input.
enum ExitCode { kOk = 0, kUsage = 1, kNumerical = 2, kInvalid = 3 };

/// Runs one command; args exclude the program name. The artifact goes to
/// --out when given, otherwise to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main_entry(int argc, char** argv);

}  // namespace teich::cli
