#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "stalz/sweep.hpp"

using namespace stalz;

namespace {

constexpr double kPi = 3.141592653589793;

RunConfig small_config() {
    RunConfig config;
    config.tau_grid = logspace(0.05, 0.5, 4);
    config.steps = 500;
    config.threads = 1;
    return config;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
}

} // namespace

TEST_CASE("default config reproduces the reference setting") {
    const RunConfig config;
    CHECK(config.delta_khz == 2.0);
    CHECK(config.delta_rad_per_ms() == doctest::Approx(4.0 * kPi).epsilon(1e-15));
    CHECK(config.theta0 == doctest::Approx(kPi / 3.0).epsilon(1e-15));
    CHECK(config.gamma_per_ms == 2.5);
    REQUIRE(config.tau_grid.size() == 60);
    CHECK(config.tau_grid.front() == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(config.tau_grid.back() == doctest::Approx(10.0).epsilon(1e-12));
    CHECK_NOTHROW(config.validate());
}

TEST_CASE("config parses key = value lines with comments") {
    const std::string text =
        "# run configuration\n"
        "delta_khz = 4.0\n"
        "theta0 = 0.5   # rad\n"
        "gamma_per_ms = 0\n"
        "tau_grid = 0.1, 0.2, 0.4\n"
        "steps = 1000\n"
        "seed = 99\n"
        "threads = 2\n"
        "output_path = out.csv\n";
    const RunConfig config = parse_config_string(text);
    CHECK(config.delta_khz == 4.0);
    CHECK(config.theta0 == 0.5);
    CHECK(config.gamma_per_ms == 0.0);
    REQUIRE(config.tau_grid.size() == 3);
    CHECK(config.tau_grid[1] == 0.2);
    CHECK(config.steps == 1000);
    CHECK(config.seed == 99);
    CHECK(config.threads == 2);
    CHECK(config.output_path == "out.csv");
}

TEST_CASE("config accepts the logspace shorthand") {
    const RunConfig config = parse_config_string("tau_grid = logspace(0.01, 10, 60)\n");
    REQUIRE(config.tau_grid.size() == 60);
    CHECK(config.tau_grid.front() == 0.01);
    CHECK(config.tau_grid.back() == 10.0);
}

TEST_CASE("config rejects unknown keys, duplicates and bad values by field name") {
    CHECK_THROWS_WITH_AS(parse_config_string("delta_kz = 2\n"),
                         doctest::Contains("delta_kz"), config_error);
    CHECK_THROWS_WITH_AS(parse_config_string("steps = 100\nsteps = 200\n"),
                         doctest::Contains("duplicate"), config_error);
    CHECK_THROWS_WITH_AS(parse_config_string("theta0 = fast\n"), doctest::Contains("theta0"),
                         config_error);
    CHECK_THROWS_WITH_AS(parse_config_string("theta0 = 2.0\n"), doctest::Contains("theta0"),
                         config_error);
    CHECK_THROWS_WITH_AS(parse_config_string("steps = 10\n"), doctest::Contains("steps"),
                         config_error);
    CHECK_THROWS_WITH_AS(parse_config_string("tau_grid = 0.2, 0.1\n"),
                         doctest::Contains("tau_grid"), config_error);
    CHECK_THROWS_WITH_AS(parse_config_string("ensemble_size = 5\n"),
                         doctest::Contains("ensemble_size"), config_error);
}

TEST_CASE("config round-trips through serialization") {
    RunConfig config = small_config();
    config.delta_khz = 3.25;
    config.gamma_per_ms = 1.75;
    config.ensemble_size = 200;
    config.seed = 424242;
    const RunConfig round = parse_config_string(serialize_config(config));
    CHECK(round.delta_khz == config.delta_khz);
    CHECK(round.theta0 == config.theta0);
    CHECK(round.gamma_per_ms == config.gamma_per_ms);
    REQUIRE(round.tau_grid.size() == config.tau_grid.size());
    for (std::size_t i = 0; i < round.tau_grid.size(); ++i)
        CHECK(round.tau_grid[i] == config.tau_grid[i]);
    CHECK(round.steps == config.steps);
    CHECK(round.ensemble_size == config.ensemble_size);
    CHECK(round.seed == config.seed);
    CHECK(round.threads == config.threads);
    CHECK(round.output_path == config.output_path);
    CHECK(config_hash(round) == config_hash(config));
}

TEST_CASE("sweep emits one ordered record per (tau, protocol)") {
    const RunConfig config = small_config();
    const std::vector<SweepRecord> records = run_sweep(config);
    REQUIRE(records.size() == config.tau_grid.size() * 3);
    for (std::size_t i = 0; i < records.size(); ++i) {
        const SweepRecord& rec = records[i];
        CHECK(rec.tau_ms == config.tau_grid[i / 3]);
        const ProtocolKind expected[] = {ProtocolKind::adiabatic, ProtocolKind::traditional_tqd,
                                         ProtocolKind::optimal_tqd};
        CHECK(rec.protocol == expected[i % 3]);
        CHECK(rec.fidelity_unitary >= 0.0);
        CHECK(rec.fidelity_unitary <= 1.0 + 1e-9);
        CHECK(rec.fidelity_dephasing >= 0.0);
        CHECK(rec.fidelity_dephasing <= 1.0 + 1e-9);
        CHECK(!rec.fidelity_stochastic.has_value());
    }
    // additive intensity decomposition within each tau triple
    for (std::size_t i = 0; i < records.size(); i += 3) {
        CHECK(records[i].rel_intensity == 1.0);
        CHECK(records[i + 1].rel_intensity == 1.0 + records[i + 2].rel_intensity);
        CHECK(records[i + 1].sigma_cost >= records[i].sigma_cost);
    }
    // optimal TQD rows: unit unitary fidelity
    for (std::size_t i = 2; i < records.size(); i += 3)
        CHECK(records[i].fidelity_unitary == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("the default grid yields 180 data rows") {
    const RunConfig config;
    const std::vector<SweepRecord> records = run_sweep(config);
    CHECK(records.size() == 180); // 60 tau x 3 protocols
    // slow-limit ordering under dephasing
    const SweepRecord& last_ad = records[records.size() - 3];
    const SweepRecord& last_op = records[records.size() - 1];
    CHECK(last_ad.protocol == ProtocolKind::adiabatic);
    CHECK(last_op.protocol == ProtocolKind::optimal_tqd);
    CHECK(last_op.fidelity_dephasing > last_ad.fidelity_dephasing);
}

TEST_CASE("sweep CSV output is byte-identical across runs and thread counts") {
    RunConfig config = small_config();
    const std::vector<SweepRecord> first = run_sweep(config);
    std::ostringstream a;
    write_sweep_csv(a, config, first);

    std::ostringstream b;
    write_sweep_csv(b, config, run_sweep(config));
    CHECK(a.str() == b.str());

    // the thread count is an execution detail: identical bytes either way
    config.threads = 2;
    std::ostringstream c;
    write_sweep_csv(c, config, run_sweep(config));
    CHECK(a.str() == c.str());
}

TEST_CASE("sweep CSV carries the config hash and fixed header") {
    const RunConfig config = small_config();
    std::ostringstream out;
    write_sweep_csv(out, config, run_sweep(config));
    const auto lines = split_lines(out.str());
    REQUIRE(lines.size() >= 2);
    CHECK(lines[0] == "# stalz sweep config=" + config_hash(config));
    CHECK(lines[1] ==
          "tau_ms,protocol,fidelity_unitary,fidelity_dephasing,rel_intensity,sigma_cost");
    CHECK(split_csv(lines[2]).size() == 6);
}

TEST_CASE("stochastic column appears only when the ensemble is enabled") {
    RunConfig config = small_config();
    config.tau_grid = {0.2};
    config.ensemble_size = 100;
    const std::vector<SweepRecord> records = run_sweep(config);
    REQUIRE(records.size() == 3);
    for (const SweepRecord& rec : records) {
        REQUIRE(rec.fidelity_stochastic.has_value());
        CHECK(std::abs(*rec.fidelity_stochastic - rec.fidelity_dephasing) < 0.05);
    }
    std::ostringstream out;
    write_sweep_csv(out, config, records);
    const auto lines = split_lines(out.str());
    CHECK(split_csv(lines[1]).size() == 7);
    CHECK(split_csv(lines[2]).size() == 7);
}

TEST_CASE("boundaries report matches the closed forms at defaults") {
    const RunConfig config;
    const BoundaryReport report = compute_boundaries(config);
    CHECK(report.tau_adiabatic_ms == doctest::Approx(1.0 / 48.0).epsilon(1e-7));
    CHECK(report.tau_boundary_intensity_ms ==
          doctest::Approx(0.0515233751548578).epsilon(1e-5));
    CHECK(report.tau_boundary_sigma_ms == doctest::Approx(0.0331318346636173).epsilon(1e-5));

    std::ostringstream out;
    cmd_boundaries(config, out);
    const auto lines = split_lines(out.str());
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "tau_adiabatic_ms          0.0208333");
    CHECK(lines[1] == "tau_boundary_intensity_ms 0.0515234");
    CHECK(lines[2] == "tau_boundary_sigma_ms     0.0331318");
}

TEST_CASE("boundaries halve when the detuning doubles") {
    RunConfig config;
    const BoundaryReport base = compute_boundaries(config);
    config.delta_khz = 4.0;
    const BoundaryReport doubled = compute_boundaries(config);
    CHECK(doubled.tau_adiabatic_ms == doctest::Approx(0.5 * base.tau_adiabatic_ms).epsilon(1e-6));
    CHECK(doubled.tau_boundary_intensity_ms ==
          doctest::Approx(0.5 * base.tau_boundary_intensity_ms).epsilon(1e-4));
    CHECK(doubled.tau_boundary_sigma_ms ==
          doctest::Approx(0.5 * base.tau_boundary_sigma_ms).epsilon(1e-4));
}

TEST_CASE("boundaries stay finite for a nearly flat drive") {
    RunConfig config;
    config.theta0 = 0.001;
    const BoundaryReport report = compute_boundaries(config);
    CHECK(report.tau_adiabatic_ms < 1e-4);
    CHECK(report.tau_boundary_intensity_ms > 0.0);
    CHECK(report.tau_boundary_sigma_ms > 0.0);
}

TEST_CASE("cmd_run emits a dense trajectory with sane columns") {
    RunConfig config;
    config.gamma_per_ms = 2.5;
    std::ostringstream out;
    cmd_run(config, ProtocolKind::optimal_tqd, 1.0, out);
    const auto lines = split_lines(out.str());
    REQUIRE(lines.size() >= 202); // comment + header + >= 200 samples
    CHECK(split_csv(lines[1]).size() == 6);
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const auto cells = split_csv(lines[i]);
        REQUIRE(cells.size() == 6);
        const double trace = std::stod(cells[5]);
        CHECK(std::abs(trace - 1.0) < 1e-6);
        const double fid = std::stod(cells[4]);
        CHECK(fid >= 0.0);
        CHECK(fid <= 1.0 + 1e-9);
    }
}

TEST_CASE("cmd_run instantaneous fidelity is unity for unitary optimal TQD") {
    RunConfig config;
    config.gamma_per_ms = 0.0;
    std::ostringstream out;
    cmd_run(config, ProtocolKind::optimal_tqd, 1.0, out);
    const auto lines = split_lines(out.str());
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const double fid = std::stod(split_csv(lines[i])[4]);
        CHECK(fid > 1.0 - 1e-6);
    }
}

TEST_CASE("cmd_run keeps at least 200 output points at the minimum step floor") {
    RunConfig config;
    config.steps = 100;
    std::ostringstream out;
    cmd_run(config, ProtocolKind::optimal_tqd, 0.05, out);
    CHECK(split_lines(out.str()).size() >= 202);
}

TEST_CASE("cmd_run shows diabatic leakage for a fast adiabatic sweep") {
    RunConfig config;
    config.gamma_per_ms = 0.0;
    std::ostringstream out;
    cmd_run(config, ProtocolKind::adiabatic, 0.01, out);
    const auto lines = split_lines(out.str());
    const double final_fid = std::stod(split_csv(lines.back())[4]);
    CHECK(final_fid < 0.999);
}

TEST_CASE("cmd_waveform: optimal TQD is a flat resonant record") {
    const RunConfig config;
    std::ostringstream out;
    cmd_waveform(config, ProtocolKind::optimal_tqd, 1.0, 100.0, out);
    const auto lines = split_lines(out.str());
    REQUIRE(lines.size() == 103); // comment + header + 101 samples
    CHECK(lines[1] == "t_ms,field,rabi_amplitude,detuning,quadrature_phase");
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const auto cells = split_csv(lines[i]);
        REQUIRE(cells.size() == 5);
        CHECK(cells[1] == "counterdiabatic");
        CHECK(std::stod(cells[2]) == doctest::Approx(kPi / 6.0).epsilon(1e-8));
        CHECK(cells[3] == "0");
        CHECK(std::stod(cells[4]) == doctest::Approx(kPi / 2.0).epsilon(1e-8));
    }
}

TEST_CASE("cmd_waveform: adiabatic record starts at zero amplitude, full detuning") {
    const RunConfig config;
    std::ostringstream out;
    cmd_waveform(config, ProtocolKind::adiabatic, 1.0, 100.0, out);
    const auto lines = split_lines(out.str());
    const auto first = split_csv(lines[2]);
    CHECK(first[1] == "adiabatic");
    CHECK(std::stod(first[2]) == 0.0);
    CHECK(std::stod(first[3]) == doctest::Approx(4.0 * kPi).epsilon(1e-8));
    CHECK(std::stod(first[4]) == 0.0);
}

TEST_CASE("cmd_waveform: traditional TQD superposes both field records") {
    const RunConfig config;
    std::ostringstream ad, op, sa;
    cmd_waveform(config, ProtocolKind::adiabatic, 0.5, 64.0, ad);
    cmd_waveform(config, ProtocolKind::optimal_tqd, 0.5, 64.0, op);
    cmd_waveform(config, ProtocolKind::traditional_tqd, 0.5, 64.0, sa);
    const std::size_t n_ad = split_lines(ad.str()).size() - 2;
    const std::size_t n_op = split_lines(op.str()).size() - 2;
    const std::size_t n_sa = split_lines(sa.str()).size() - 2;
    CHECK(n_sa == n_ad + n_op);
}

TEST_CASE("cmd_waveform rejects an undersampled request") {
    const RunConfig config;
    std::ostringstream out;
    CHECK_THROWS_AS(cmd_waveform(config, ProtocolKind::optimal_tqd, 0.1, 100.0, out),
                    config_error);
}

TEST_CASE("cmd_run and cmd_waveform reject the generalized protocol") {
    const RunConfig config;
    std::ostringstream out;
    CHECK_THROWS_AS(cmd_run(config, ProtocolKind::generalized_tqd, 1.0, out), config_error);
    CHECK_THROWS_AS(cmd_waveform(config, ProtocolKind::generalized_tqd, 1.0, 100.0, out),
                    config_error);
}

TEST_CASE("cmd_sweep writes the CSV file and a summary") {
    RunConfig config = small_config();
    const std::string path = "test_sweep_output.csv";
    config.output_path = path;
    std::ostringstream summary;
    cmd_sweep(config, summary);
    std::ifstream file(path);
    REQUIRE(file.good());
    std::stringstream contents;
    contents << file.rdbuf();
    const auto lines = split_lines(contents.str());
    CHECK(lines.size() == 2 + config.tau_grid.size() * 3);
    CHECK(summary.str().find(config_hash(config)) != std::string::npos);
    CHECK(summary.str().find(path) != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("cmd_sweep surfaces an unwritable output path as io_error") {
    RunConfig config = small_config();
    config.tau_grid = {0.1};
    config.output_path = "no_such_dir/sweep.csv";
    std::ostringstream summary;
    CHECK_THROWS_AS(cmd_sweep(config, summary), io_error);
}

TEST_CASE("effective_steps honors both contracts") {
    RunConfig config;
    const ProtocolSpec slow = ProtocolSpec::adiabatic(config.lz(10.0));
    const int steps = effective_steps(config, slow);
    CHECK(steps >= 20000); // convergence: dt <= 5e-4 ms
    const double dt = 10.0 / steps;
    CHECK(dt * 2.0 * config.delta_rad_per_ms() < 0.05);
    const ProtocolSpec fast = ProtocolSpec::adiabatic(config.lz(0.01));
    CHECK(effective_steps(config, fast) == config.steps);
}
