// sweep.hpp — experiment runner behind the CLI: tau sweeps, boundary report,
// single-run trajectories and waveform export
#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "stalz/config.hpp"
#include "stalz/dynamics.hpp"
#include "stalz/metrics.hpp"

namespace stalz {

struct SweepRecord {
    double tau_ms = 0.0;
    ProtocolKind protocol = ProtocolKind::adiabatic;
    double fidelity_unitary = 0.0;
    double fidelity_dephasing = 0.0;
    double rel_intensity = 0.0;
    double sigma_cost = 0.0;
    std::optional<double> fidelity_stochastic;
};

struct BoundaryReport {
    double tau_adiabatic_ms = 0.0;
    double tau_boundary_intensity_ms = 0.0;
    double tau_boundary_sigma_ms = 0.0;
};

// Step count actually used for a propagation: the configured baseline raised
// until both the Lindblad stability contract and the unitary convergence
// contract hold for this protocol and tau.
int effective_steps(const RunConfig& config, const ProtocolSpec& spec);

// One record per (tau, protocol in {adiabatic, traditional_tqd, optimal_tqd}),
// ordered by (tau index, protocol index) regardless of thread count.
std::vector<SweepRecord> run_sweep(const RunConfig& config);

void write_sweep_csv(std::ostream& out, const RunConfig& config,
                     const std::vector<SweepRecord>& records);

BoundaryReport compute_boundaries(const RunConfig& config);

// ---- CLI command bodies; throw config_error / numeric_error / io_error ------

void cmd_sweep(const RunConfig& config, std::ostream& summary);
void cmd_boundaries(const RunConfig& config, std::ostream& out,
                    const std::string& csv_path = "");
void cmd_run(const RunConfig& config, ProtocolKind protocol, double tau, std::ostream& csv);
void cmd_waveform(const RunConfig& config, ProtocolKind protocol, double tau,
                  double sample_rate, std::ostream& csv);

} // namespace stalz
