// config.hpp — flat key=value run configuration for the experiment runner
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "stalz/protocols.hpp"

namespace stalz {

// Defaults reproduce the reference setting: Delta = 2*pi*2 kHz, theta0 = pi/3,
// gamma = 2.5/ms, 60 log-spaced tau points over [0.01, 10] ms.
struct RunConfig {
    double delta_khz = 2.0;        // detuning as frequency; Delta = 2*pi*delta_khz rad/ms
    double theta0 = 1.0471975511965976; // pi/3
    double gamma_per_ms = 2.5;
    std::vector<double> tau_grid = default_tau_grid();
    int steps = 4000;              // baseline step count; raised per tau when needed
    int ensemble_size = 0;         // 0 = skip the stochastic-oracle columns
    std::uint64_t seed = 20210901;
    int threads = 1;
    std::string output_path = "sweep.csv";

    static std::vector<double> default_tau_grid();

    double delta_rad_per_ms() const;
    LZParams lz(double tau) const;

    // Throws config_error naming the offending field.
    void validate() const;
};

std::vector<double> logspace(double lo, double hi, int n);

RunConfig parse_config(std::istream& in);
RunConfig parse_config_string(const std::string& text);
RunConfig load_config(const std::string& path);

std::string serialize_config(const RunConfig& config);

// 16-hex-digit FNV-1a hash of the canonical serialization.
std::string config_hash(const RunConfig& config);

} // namespace stalz
