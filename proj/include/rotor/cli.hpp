#pragma once

#include <iosfwd>

namespace rotor {

/// Exit codes: 0 success / all checks pass, 1 verification failure, 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rotor
