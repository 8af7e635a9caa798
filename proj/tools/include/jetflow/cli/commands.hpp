#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "jetflow/cli/problem.hpp"

namespace jetflow::cli {

struct OutputOptions {
  bool csv = false;
  bool parallel = false;
};

/// Names accepted as Problem::command.
const std::vector<std::string>& command_names();

/// Runs the problem's command. Results go to `out`, notes to `err`.
/// Library errors propagate; see exit_code_for.
void execute(const Problem& problem, const OutputOptions& options, std::ostream& out, std::ostream& err);

/// execute() with errors turned into a message on `err` and an exit code:
/// 0 success, 2 precondition violation, 3 parse error, 4 internal error.
int run_problem(const Problem& problem, const OutputOptions& options, std::ostream& out, std::ostream& err);

}  // namespace jetflow::cli
