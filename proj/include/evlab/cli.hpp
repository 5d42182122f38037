#pragma once

namespace evlab {

// Parses argv, dispatches to one of the subcommands (gallery, scan, refine,
// check, oracle), and maps outcomes to exit codes: 0 success, 1 usage error,
// 2 numeric failure, 3 prediction mismatch.
int run_cli(int argc, char** argv);

}  // namespace evlab
