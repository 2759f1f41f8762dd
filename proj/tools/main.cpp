#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "jumplab/errors.hpp"
#include "jumplab_cli/commands.hpp"
#include "jumplab_cli/jsonout.hpp"
#include "jumplab_cli/run_config.hpp"

namespace {

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::string format;
    std::optional<uint64_t> seed;
    bool run_asserts = false;
};

void attach_options(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "JSON run configuration")->required();
    cmd->add_option("--out", opts.out_path, "output path (overrides config)");
    cmd->add_option("--format", opts.format, "csv or json (overrides config)")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", opts.seed, "RNG seed for MC commands (overrides config)");
    cmd->add_flag("--assert", opts.run_asserts, "evaluate the command's assertion set");
}

void print_error(const std::string& command, const std::string& type,
                 const std::string& message) {
    jumplab::cli::JsonWriter w;
    w.begin_object();
    w.key("error").begin_object();
    w.kv("command", command);
    w.kv("type", type);
    w.kv("message", message);
    w.end_object();
    w.end_object();
    std::cerr << w.str() << "\n";
}

std::string error_type(const jumplab::Error& e) {
    if (dynamic_cast<const jumplab::InvalidRate*>(&e)) return "invalid-rate";
    if (dynamic_cast<const jumplab::InvalidMeasure*>(&e)) return "invalid-measure";
    if (dynamic_cast<const jumplab::SingularSystem*>(&e)) return "singular-system";
    if (dynamic_cast<const jumplab::OutOfDomain*>(&e)) return "out-of-domain";
    if (dynamic_cast<const jumplab::OutOfHypothesis*>(&e)) return "out-of-hypothesis";
    if (dynamic_cast<const jumplab::DiscretizationFailure*>(&e)) return "discretization-failure";
    if (dynamic_cast<const jumplab::NoRoot*>(&e)) return "no-root";
    if (dynamic_cast<const jumplab::NonConvergence*>(&e)) return "non-convergence";
    if (dynamic_cast<const jumplab::InvalidArgument*>(&e)) return "invalid-argument";
    return "error";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"principal-eigenvalue laboratory for Brownian motion with random jumps"};
    app.require_subcommand(1);

    const char* names[] = {"solve", "sweep", "constant", "diagnose",
                           "simulate", "fk-check", "degenerate"};
    const char* descriptions[] = {
        "principal eigenvalue at one gamma",
        "gamma sweep with Richardson extrapolation and limit fits",
        "theoretical limit constant for the measure's vanishing order",
        "limit diagnostics: gamma*v -> 1/V, boundary gradients, sublinearity",
        "jump-diffusion survival probabilities and decay-rate estimate",
        "Feynman-Kac estimates against the boundary-value solver",
        "degenerate-rate explorer: sweep, slopes, supersolution checks"};
    CommonOptions opts[7];
    for (int i = 0; i < 7; ++i) {
        attach_options(app.add_subcommand(names[i], descriptions[i]), opts[i]);
    }

    CLI11_PARSE(app, argc, argv);

    int which = -1;
    for (int i = 0; i < 7; ++i) {
        if (app.get_subcommand(names[i])->parsed()) which = i;
    }
    const std::string command_name = names[which];
    const CommonOptions& opt = opts[which];

    try {
        jumplab::cli::RunConfig cfg = jumplab::cli::parse_config(opt.config_path);
        if (opt.seed) cfg.mc.seed = *opt.seed;
        if (!opt.out_path.empty()) cfg.output.path = opt.out_path;
        if (!opt.format.empty()) cfg.output.format = opt.format;

        const jumplab::cli::Command cmd = jumplab::cli::command_from_string(command_name);
        const jumplab::cli::CommandOutput result =
            jumplab::cli::run_command(cmd, cfg, opt.run_asserts);

        const std::string& payload =
            cfg.output.format == "csv" ? result.csv_text : result.json_text;
        if (cfg.output.path.empty()) {
            std::cout << payload;
        } else {
            std::ofstream out(cfg.output.path, std::ios::binary);
            if (!out) {
                print_error(command_name, "io", "cannot write " + cfg.output.path);
                return 1;
            }
            out << payload;
        }

        if (opt.run_asserts && !result.assert_failures.empty()) {
            jumplab::cli::JsonWriter w;
            w.begin_object();
            w.key("assert_failures").begin_array();
            for (const auto& f : result.assert_failures) w.value(f);
            w.end_array();
            w.end_object();
            std::cerr << w.str() << "\n";
            return 3;
        }
        return 0;
    } catch (const jumplab::Error& e) {
        print_error(command_name, error_type(e), e.what());
        return 1;
    } catch (const std::exception& e) {
        print_error(command_name, "internal", e.what());
        return 1;
    }
}
