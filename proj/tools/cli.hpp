#pragma once

#include <iosfwd>
#include <span>

namespace trispin::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kInputError = 1,     ///< validation, domain or usage error
  kToleranceFailure = 2,  ///< `selftest` or `pst` outside tolerance
};

/// Runs one command line. `args` includes the program name at position 0.
/// Tables go to `out` unless --out names a file; diagnostics go to `err`.
int run(std::span<const char* const> args, std::ostream& out, std::ostream& err);

}  // namespace trispin::cli
