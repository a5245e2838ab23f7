#pragma once

// The `lrbac` command-line front end, callable in-process.

#include <iosfwd>
#include <string>
#include <vector>

namespace lrbac {

enum ExitCode { kExitOk = 0, kExitNegative = 1, kExitUsage = 2 };

// args excludes the program name. Reads `-` files from `in`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

}  // namespace lrbac
