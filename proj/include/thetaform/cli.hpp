#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace thetaform {

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_jacobi = 2, exit_obstruction = 3 };

/// Command-line driver; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thetaform
