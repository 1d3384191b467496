#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sisfront {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitNumerical = 2,
  kExitInternal = 3,
};

/// Runs `sisfront <command> [flags]` with args excluding the program name.
/// Human-readable progress goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sisfront
