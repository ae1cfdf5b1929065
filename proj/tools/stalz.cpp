// stalz — shortcuts-to-adiabaticity toolkit for the driven two-level system.
// Subcommands: sweep | boundaries | run | waveform.
// Exit codes: 0 success, 2 config error, 3 numerical-integrity error, 4 I/O error.
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "stalz/sweep.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string output_path;
    std::optional<long long> seed;
    std::optional<int> threads;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "configuration file (key = value lines)");
    cmd->add_option("--output", args.output_path, "output path (overrides the config)");
    cmd->add_option("--seed", args.seed, "RNG seed (overrides the config)");
    cmd->add_option("--threads", args.threads, "worker threads for sweeps");
}

stalz::RunConfig resolve_config(const CommonArgs& args) {
    stalz::RunConfig config;
    if (!args.config_path.empty()) config = stalz::load_config(args.config_path);
    if (!args.output_path.empty()) config.output_path = args.output_path;
    if (args.seed) config.seed = static_cast<std::uint64_t>(*args.seed);
    if (args.threads) config.threads = *args.threads;
    config.validate();
    return config;
}

stalz::ProtocolKind resolve_protocol(const std::string& name) {
    const auto kind = stalz::parse_protocol(name);
    if (!kind)
        throw stalz::config_error("protocol: unknown name '" + name +
                                  "' (expected adiabatic, traditional_tqd or optimal_tqd)");
    return *kind;
}

// Streams a command that writes CSV either to a file or to stdout.
void run_csv_command(const std::string& path,
                     const std::function<void(std::ostream&)>& body) {
    if (path.empty()) {
        body(std::cout);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw stalz::io_error("cannot open output file '" + path + "'");
    body(file);
    file.flush();
    if (!file) throw stalz::io_error("failed writing output file '" + path + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"shortcuts-to-adiabaticity simulator for the driven two-level system"};
    app.require_subcommand(1);

    CommonArgs sweep_args;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "sweep tau over all protocols; write fidelities and costs as CSV");
    add_common(sweep, sweep_args);

    CommonArgs bound_args;
    CLI::App* boundaries = app.add_subcommand(
        "boundaries", "report tau_ad and the intensity/sigma crossover times");
    add_common(boundaries, bound_args);

    CommonArgs run_args;
    std::string run_protocol = "optimal_tqd";
    double run_tau = 1.0;
    CLI::App* run = app.add_subcommand("run", "sample a single trajectory as CSV");
    add_common(run, run_args);
    run->add_option("--protocol", run_protocol, "adiabatic | traditional_tqd | optimal_tqd");
    run->add_option("--tau", run_tau, "total evolution time in ms")->required();

    CommonArgs wave_args;
    std::string wave_protocol = "optimal_tqd";
    double wave_tau = 1.0;
    double wave_rate = 200.0;
    CLI::App* waveform =
        app.add_subcommand("waveform", "export the drive field records as CSV");
    add_common(waveform, wave_args);
    waveform->add_option("--protocol", wave_protocol,
                         "adiabatic | traditional_tqd | optimal_tqd");
    waveform->add_option("--tau", wave_tau, "total evolution time in ms")->required();
    waveform->add_option("--sample-rate", wave_rate, "samples per ms (default 200)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sweep->parsed()) {
            stalz::cmd_sweep(resolve_config(sweep_args), std::cout);
        } else if (boundaries->parsed()) {
            const stalz::RunConfig config = resolve_config(bound_args);
            // --output selects an optional CSV; the report always goes to stdout.
            stalz::cmd_boundaries(config, std::cout,
                                  bound_args.output_path.empty() ? "" : config.output_path);
        } else if (run->parsed()) {
            stalz::RunConfig config;
            if (!run_args.config_path.empty()) config = stalz::load_config(run_args.config_path);
            if (run_args.seed) config.seed = static_cast<std::uint64_t>(*run_args.seed);
            config.validate();
            run_csv_command(run_args.output_path, [&](std::ostream& out) {
                stalz::cmd_run(config, resolve_protocol(run_protocol), run_tau, out);
            });
        } else if (waveform->parsed()) {
            stalz::RunConfig config;
            if (!wave_args.config_path.empty())
                config = stalz::load_config(wave_args.config_path);
            config.validate();
            run_csv_command(wave_args.output_path, [&](std::ostream& out) {
                stalz::cmd_waveform(config, resolve_protocol(wave_protocol), wave_tau, wave_rate,
                                    out);
            });
        }
    } catch (const stalz::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const stalz::io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const stalz::numeric_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
