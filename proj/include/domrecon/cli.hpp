#pragma once

#include <iosfwd>

namespace domrecon {

/// Entry point of the `domrecon` tool. Exit codes: 0 ok, 1 input or contract
/// error, 2 usage error, 3 resource limit.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace domrecon
