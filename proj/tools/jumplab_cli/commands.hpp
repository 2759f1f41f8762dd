#pragma once

#include <string>
#include <vector>

#include "jumplab_cli/run_config.hpp"

namespace jumplab::cli {

enum class Command { solve, sweep, constant, diagnose, simulate, fk_check, degenerate };

Command command_from_string(const std::string& name);
std::string to_string(Command cmd);

struct CommandOutput {
    std::string json_text;
    std::string csv_text;
    std::vector<std::string> assert_failures;  // filled only when asserts requested
};

/// Execute a command against a validated config. The CSV block is always
/// regenerated from the parsed JSON result, so the two stay in lockstep.
/// Module errors propagate as jumplab::Error subclasses.
CommandOutput run_command(Command cmd, const RunConfig& config, bool run_asserts = false);

/// Rebuild the CSV table from a result document (column list + rows).
std::string csv_from_result_json(const std::string& json_text);

}  // namespace jumplab::cli
