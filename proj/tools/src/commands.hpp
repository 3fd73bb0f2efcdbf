#pragma once

#include "config.hpp"
#include "report.hpp"

#include <iosfwd>

namespace hypsym::cli {

CommandResult run_command(const RunConfig& cfg);

// Full front end: argument parsing, config resolution, execution and output.
// Returns 0 on success, 2 when a property check fails and 1 on error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hypsym::cli
