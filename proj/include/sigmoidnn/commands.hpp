#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "sigmoidnn/config.hpp"

namespace sigmoidnn {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
    kExitOk = 0,           // ran, all assertions hold
    kExitIoError = 1,      // could not write output
    kExitFlagged = 2,      // ran with flagged failures or a hypothesis violation
    kExitConfigError = 64  // malformed or inconsistent configuration
};

struct CommandOptions {
    std::optional<std::string> out_dir;  // overrides config.output_dir
    std::uint64_t seed = 0;
    bool quiet = false;
};

/// Validates, runs and writes `<out>/<command>.csv` atomically.
/// Diagnostics go to `log`. Never throws for library errors; they map to exit codes.
int run_command(Command command, const RunConfig& config, const CommandOptions& options, std::ostream& log);

/// Path of the CSV a command writes for the given options/config.
std::string output_path(Command command, const RunConfig& config, const CommandOptions& options);

}  // namespace sigmoidnn
