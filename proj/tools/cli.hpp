#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace spider::cli {

enum Exit : int { ok = 0, verification_failed = 2, input_error = 3, guardrail = 4 };

// Runs one command line (args[0] is the program name) and returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spider::cli
