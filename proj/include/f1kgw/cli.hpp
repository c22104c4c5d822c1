#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace f1kgw {

/// Batch front end. Exit codes: 0 success/verified, 1 domain error (with a
/// structured JSON error on the error stream), 2 usage error, 3 theorem
/// check failure.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace f1kgw
