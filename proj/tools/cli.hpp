#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace fewnomial::cli {

/// Exit codes: 0 success, 1 input or usage error, 2 a checked assertion failed.
enum ExitCode { kOk = 0, kInputError = 1, kAssertionFailed = 2 };

/// Runs one subcommand. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr);
int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr);

}  // namespace fewnomial::cli
