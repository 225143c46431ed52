#pragma once

#include <string>
#include <vector>

#include "speckit/config.hpp"

namespace speckit::cli {

/// Pipeline stages. Each reads/writes files under config.out_dir and
/// throws the library's typed errors; run() maps them to exit codes.
void cmd_simulate(const RunConfig& config);
void cmd_train(const RunConfig& config);
void cmd_fit(const RunConfig& config);
void cmd_restore(const RunConfig& config);
void cmd_report(const RunConfig& config);

/// Entry point behind main(): parses `simulate|train|fit|restore|report`
/// with --config/--out/--seed/--mode and dispatches. Exit codes:
/// 0 success, 2 config error, 3 numeric/convergence error, 4 I/O error.
int run(const std::vector<std::string>& args);

}  // namespace speckit::cli
