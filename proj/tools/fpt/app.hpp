#pragma once

#include <ostream>

namespace fpt::cli {

/// Parses the command line and runs one subcommand. Returns the exit code:
/// 0 success, 2 numeric failure, 3 bad input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fpt::cli
