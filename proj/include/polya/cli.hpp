#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace polya {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 2,
    exit_disagreement = 3,
    exit_undecided = 4,
};

/// Runs the command line (program name excluded). Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polya
