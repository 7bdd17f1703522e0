#pragma once

#include <iosfwd>

namespace ebc {

// Entry point of the `ebc` tool. Exit codes: 0 success, 1 usage error,
// 2 runtime failure. `in` backs "-" inputs.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

// Cross-module oracle checks; prints one PASS/FAIL line each and returns the
// number of failures.
int run_selftest(std::ostream& out);

}  // namespace ebc
