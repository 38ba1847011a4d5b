#pragma once

#include <iosfwd>

namespace dcc {

/// Entry point of the `dcc` command-line tool. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dcc
