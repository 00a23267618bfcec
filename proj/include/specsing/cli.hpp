#pragma once

#include <iosfwd>

namespace specsing {

/// Entry point of the command-line tool. Exit codes: 0 success, 2 usage or
/// parse error, 3 numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace specsing
