#pragma once

#include <ostream>

namespace laminar::cli {

// Exit codes: 0 success, 1 config error, 2 numerical failure, 3 property-suite failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace laminar::cli
