// gyrosim: comb-drive vibratory gyroscope simulator.
//
//   gyrosim derive   --config dev.json
//   gyrosim respond  --config dev.json --freq-min-hz 400 --freq-max-hz 600 --points 201
//   gyrosim simulate --config dev.json --out traj.csv
//   gyrosim sweep    --config dev.json --variable damping --min 1e-8 --max 1e-6 --points 100
//
// Exit codes: 0 success, 2 configuration/validation error, 1 runtime or I/O error.

#include "gyrosim/commands.hpp"
#include "gyrosim/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::vector<std::string> overrides;
};

void add_common(CLI::App *cmd, CommonOptions &opts) {
    cmd->add_option("--config", opts.config_path, "Device configuration (JSON)")->required();
    cmd->add_option("--out", opts.out_path, "Output file (default: standard output)");
    cmd->add_option("--params", opts.overrides, "Override a config entry, e.g. gyro.mass=2e-8");
}

// Runs `body` with the selected output stream.
template <typename Body>
void with_output(const std::string &path, Body &&body) {
    if (path.empty()) {
        body(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream file(path);
    if (!file) {
        throw gyrosim::IoError("cannot open '" + path + "' for writing");
    }
    body(file);
    file.flush();
    if (!file) {
        throw gyrosim::IoError("write failed for '" + path + "'");
    }
}

} // namespace

int main(int argc, char **argv) {
    using namespace gyrosim;

    CLI::App app{"Comb-drive vibratory gyroscope simulator"};
    app.require_subcommand(1);

    CommonOptions common;

    auto *derive = app.add_subcommand("derive", "Print natural frequency, damping ratio, Q and F");
    add_common(derive, common);

    cli::RespondOptions respond_opts;
    auto *respond = app.add_subcommand("respond", "Closed-form frequency response CSV");
    add_common(respond, common);
    respond->add_option("--freq-min-hz,--freq-min", respond_opts.freq_min_hz)->required();
    respond->add_option("--freq-max-hz,--freq-max", respond_opts.freq_max_hz)->required();
    respond->add_option("--points", respond_opts.points)->required();

    auto *simulate = app.add_subcommand("simulate", "RK4 time-domain trajectory CSV");
    add_common(simulate, common);

    cli::SweepOptions sweep_opts;
    std::string variable = "damping";
    std::string scale = "linear";
    auto *sweep_cmd = app.add_subcommand("sweep", "Damping or temperature sweep CSV");
    add_common(sweep_cmd, common);
    sweep_cmd->add_option("--variable", variable, "damping | temperature")->required();
    sweep_cmd->add_option("--min", sweep_opts.min)->required();
    sweep_cmd->add_option("--max", sweep_opts.max)->required();
    sweep_cmd->add_option("--points", sweep_opts.points)->required();
    sweep_cmd->add_option("--scale", scale, "linear | log");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        const cli::Config config = cli::load_config(common.config_path, common.overrides);
        if (derive->parsed()) {
            with_output(common.out_path, [&](std::ostream &out) { cli::cmd_derive(config, out); });
        } else if (respond->parsed()) {
            with_output(common.out_path,
                        [&](std::ostream &out) { cli::cmd_respond(config, respond_opts, out); });
        } else if (simulate->parsed()) {
            with_output(common.out_path, [&](std::ostream &out) {
                cli::cmd_simulate(config, out, std::cout);
            });
        } else if (sweep_cmd->parsed()) {
            sweep_opts.variable = sweep::parse_variable(variable);
            sweep_opts.scale = sweep::parse_scale(scale);
            with_output(common.out_path,
                        [&](std::ostream &out) { cli::cmd_sweep(config, sweep_opts, out); });
        }
    } catch (const ValidationError &e) {
        std::cerr << "gyrosim: invalid " << e.what() << '\n';
        return kExitValidation;
    } catch (const DomainError &e) {
        std::cerr << "gyrosim: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception &e) {
        std::cerr << "gyrosim: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
