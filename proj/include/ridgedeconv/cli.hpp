#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ridgedeconv {

//! Runs one subcommand (estimate | cv | regress | simulate | rates | riskbound).
//! `args` excludes the program name. Returns the process exit code:
//! 0 success, 1 guard or internal error, 2 input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv);

} // namespace ridgedeconv
