#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cmarket {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    exit_ok = 0,
    exit_runtime_error = 1,
    exit_config_error = 2,
};

/// An output file or directory could not be created or written.
class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/** Parses "start:stop:step" (inclusive of stop within half a step, values rounded
 * to 12 decimals) or a comma-separated list. Throws ConfigError.
 */
std::vector<double> parse_grid_values(std::string_view text);

/** Entry point of the `cmarket` tool; args excludes the program name.
 *
 * Subcommands: run, sweep, paired, export-graph. Normal output goes to `out`,
 * diagnostics to `err`.
 */
int cli_main(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace cmarket
