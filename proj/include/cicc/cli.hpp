#pragma once

namespace cicc {

/// Parses and runs one command-line invocation. Returns the process exit
/// code: 0 on success, 1 on validation failure (bad input, infeasible
/// request, failed verification), 2 on internal error.
int run_cli(int argc, const char* const* argv);

}  // namespace cicc
