#pragma once

#include <iosfwd>

namespace nullcover
{

/// Exit codes of the command-line tool.
enum ExitCode : int
{
  exit_ok = 0,
  exit_usage = 1,
  exit_input = 2,
  exit_budget = 3,
  exit_verification = 4
};

/// Entry point of the `nullcover` tool; writes results to `out` and
/// diagnostics to `err`.
int run_cli( int argc, const char* const* argv, std::ostream& out, std::ostream& err );

} // namespace nullcover
