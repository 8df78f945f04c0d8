#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <iostream>

#include "commands.hpp"

using namespace curveflow::cli;

namespace {

void configure_logging() {
    spdlog::set_level(spdlog::level::warn);
    const char* env = std::getenv("CURVEFLOW_LOG");
    if (!env) return;
    const std::string v = env;
    if (v == "error") spdlog::set_level(spdlog::level::err);
    else if (v == "info") spdlog::set_level(spdlog::level::info);
    else if (v == "debug") spdlog::set_level(spdlog::level::debug);
    else std::cerr << "warning: ignoring CURVEFLOW_LOG=" << v << " (error, info or debug)\n";
}

struct SharedFlags {
    std::string config;
    std::string out;
    std::optional<int> grid;
    std::optional<double> tol;
    std::optional<long> max_steps;
    std::optional<std::uint64_t> seed;

    void attach(CLI::App* app) {
        app->add_option("--out", out, "Output directory");
        app->add_option("--grid", grid, "Grid size M");
        app->add_option("--tol", tol, "Convergence tolerance");
        app->add_option("--max-steps", max_steps, "Step limit");
        app->add_option("--seed", seed, "Seed for sampled checks");
    }

    CommandOptions options() const {
        CommandOptions o;
        o.overrides = {grid, tol, max_steps, seed};
        if (!out.empty()) o.out_dir = out;
        return o;
    }
};

}  // namespace

int main(int argc, char** argv) {
    configure_logging();
    CLI::App app{"Anisotropic curvature flows in space forms"};
    app.require_subcommand(1);

    SharedFlags solve_flags, check_flags, verify_flags;
    std::string sweep;
    std::string result_path;

    auto* solve = app.add_subcommand("solve", "Run the flow for a configuration");
    solve->add_option("--config", solve_flags.config, "Run configuration (JSON)");
    solve->add_option("--sweep", sweep, "Glob of configurations to run concurrently");
    solve_flags.attach(solve);

    auto* check = app.add_subcommand("check", "Evaluate structural and data conditions");
    check->add_option("--config", check_flags.config, "Run configuration (JSON)")->required();
    check_flags.attach(check);

    auto* verify = app.add_subcommand("verify", "Compare a result with residual and oracle checks");
    verify->add_option("result", result_path, "result.json written by solve")->required();
    verify->add_option("--config", verify_flags.config, "Configuration (defaults to the echo in the result)");
    verify_flags.attach(verify);

    CLI11_PARSE(app, argc, argv);

    if (solve->parsed()) {
        const CommandOptions o = solve_flags.options();
        if (!sweep.empty() && !solve_flags.config.empty()) {
            std::cerr << "error: --config and --sweep are exclusive\n";
            return kExitError;
        }
        if (!sweep.empty()) return guarded("sweep", [&] { return cmd_solve_sweep(sweep, o); });
        if (solve_flags.config.empty()) {
            std::cerr << "error: solve needs --config or --sweep\n";
            return kExitError;
        }
        return guarded(solve_flags.config, [&] { return cmd_solve(solve_flags.config, o); });
    }
    if (check->parsed())
        return guarded(check_flags.config, [&] { return cmd_check(check_flags.config, check_flags.options()); });
    std::optional<std::string> cfg;
    if (!verify_flags.config.empty()) cfg = verify_flags.config;
    return guarded("verify", [&] { return cmd_verify(result_path, cfg, verify_flags.options()); });
}
