// run.hpp — executes a parsed RunConfig against the lmgq C API and writes the
// resulting tables to disk. Returns a process exit code (0, 2, 3 or 4).

#pragma once

#include "config.hpp"

#include <string>
#include <vector>

namespace lmgq_cli {

int run_command(const RunConfig& config, std::vector<std::string>* written_paths = nullptr);

} // namespace lmgq_cli
