#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hminor::cli {

enum ExitCode : int { exit_ok = 0, exit_minor_found = 1, exit_usage = 2, exit_budget = 3 };

/// Runs one command line (args[0] is the program name). Check failures
/// (invalid certificate, lemma violations) also exit with 1.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hminor::cli
