#pragma once

#include <string>
#include <vector>

namespace wrinklevar {

// Command-line entry point: verify | minimize | sweep | analyze, each with
// --config <path>, --out <dir> and --seed <u64>. Returns 0 on success, 1 on
// diagnostics (non-convergence, hypothesis failure), 2 on usage or config
// errors. args excludes the program name.
int run_command(const std::vector<std::string>& args);

}  // namespace wrinklevar
