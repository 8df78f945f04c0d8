#ifndef CURVEFLOW_TOOLS_COMMANDS_HPP
#define CURVEFLOW_TOOLS_COMMANDS_HPP

#include <functional>
#include <optional>
#include <string>

#include "config.hpp"
#include "curveflow/flow.hpp"

namespace curveflow::cli {

// Exit codes: 0 success, 1 configuration or scope error, 2 numerical failure
// (non-convergence, failed comparison). Artifacts are written in both 0 and 2.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNumerical = 2;

struct CommandOptions {
    Overrides overrides;
    std::optional<std::string> out_dir;  // replaces outputs.dir
};

FlowOptions flow_options(const NumericsConfig& nc);

// result.json, profile.csv, residual_history.csv and the result.timing.json sidecar.
int cmd_solve(const std::string& config_path, const CommandOptions& opts);
// Solves every config matching the pattern, each into out/<stem>, concurrently.
int cmd_solve_sweep(const std::string& pattern, const CommandOptions& opts);
// check_report.json; exit 0 iff every requested check holds.
int cmd_check(const std::string& config_path, const CommandOptions& opts);
// verify_report.json; the config defaults to the echo embedded in the result.
int cmd_verify(const std::string& result_path, const std::optional<std::string>& config_path,
               const CommandOptions& opts);

// Runs `body` and maps exceptions to exit code 1 with a message on stderr.
int guarded(const std::string& context, const std::function<int()>& body);

}  // namespace curveflow::cli

#endif
