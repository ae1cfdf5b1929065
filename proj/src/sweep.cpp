#include "stalz/sweep.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include "stalz/numerics.hpp"

namespace stalz {

namespace {

constexpr std::array<ProtocolKind, 3> kSweepProtocols = {
    ProtocolKind::adiabatic, ProtocolKind::traditional_tqd, ProtocolKind::optimal_tqd};

// dt for the unitary convergence contract (doubling the steps moves the final
// fidelity by < 1e-8 over the default parameter ranges).
constexpr double kMaxDt = 5e-4; // ms

std::string fmt9(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

std::string fmt6(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

ProtocolSpec make_spec(ProtocolKind kind, const LZParams& params) {
    switch (kind) {
        case ProtocolKind::adiabatic: return ProtocolSpec::adiabatic(params);
        case ProtocolKind::traditional_tqd: return ProtocolSpec::traditional_tqd(params);
        case ProtocolKind::optimal_tqd: return ProtocolSpec::optimal_tqd(params);
        case ProtocolKind::generalized_tqd:
            throw config_error(
                "protocol: generalized_tqd needs phase functions and is not runnable from the "
                "CLI; use adiabatic, traditional_tqd or optimal_tqd");
    }
    throw std::logic_error("make_spec: unknown protocol kind");
}

double peak_coeff_norm(const ProtocolSpec& spec) {
    double peak = 0.0;
    for (int i = 0; i <= 100; ++i)
        peak = std::max(peak, spec.coeffs(static_cast<double>(i) / 100.0).op_norm());
    return peak;
}

std::array<SweepRecord, 3> sweep_point(const RunConfig& config, std::size_t index) {
    const double tau = config.tau_grid[index];
    const LZParams params = config.lz(tau);
    const CostReport cost = relative_intensities(params, tau);

    std::array<SweepRecord, 3> out;
    for (std::size_t p = 0; p < kSweepProtocols.size(); ++p) {
        const ProtocolKind kind = kSweepProtocols[p];
        const ProtocolSpec spec = make_spec(kind, params);
        const int steps = effective_steps(config, spec);

        SweepRecord rec;
        rec.tau_ms = tau;
        rec.protocol = kind;
        rec.fidelity_unitary = propagate_unitary(spec, steps, steps).final_fidelity;
        rec.fidelity_dephasing =
            propagate_lindblad(spec, NoiseConfig(config.gamma_per_ms), steps, steps)
                .final_fidelity;
        switch (kind) {
            case ProtocolKind::adiabatic:
                rec.rel_intensity = cost.i_ad;
                rec.sigma_cost = cost.sigma_ad;
                break;
            case ProtocolKind::traditional_tqd:
                rec.rel_intensity = cost.i_sa;
                rec.sigma_cost = cost.sigma_sa;
                break;
            default:
                rec.rel_intensity = cost.i_opsa;
                rec.sigma_cost = cost.sigma_opsa;
                break;
        }
        if (config.ensemble_size > 0) {
            const NoiseConfig noise(config.gamma_per_ms, config.ensemble_size,
                                    trajectory_seed(config.seed, index * 3 + p));
            rec.fidelity_stochastic =
                propagate_stochastic(spec, noise, steps, steps).final_fidelity;
        }
        out[p] = rec;
    }
    return out;
}

} // namespace

int effective_steps(const RunConfig& config, const ProtocolSpec& spec) {
    const double tau = spec.params().tau;
    const int stability = stable_steps(tau, peak_coeff_norm(spec), config.gamma_per_ms);
    const int convergence = static_cast<int>(std::ceil(tau / kMaxDt));
    return std::max(config.steps, std::max(stability, convergence));
}

std::vector<SweepRecord> run_sweep(const RunConfig& config) {
    config.validate();
    const std::size_t n = config.tau_grid.size();
    std::vector<std::array<SweepRecord, 3>> slots(n);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) break;
            try {
                slots[i] = sweep_point(config, i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                break;
            }
        }
    };

    const int nthreads = std::max(1, std::min<int>(config.threads, static_cast<int>(n)));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<SweepRecord> records;
    records.reserve(n * 3);
    for (const auto& slot : slots)
        for (const auto& rec : slot) records.push_back(rec);
    return records;
}

void write_sweep_csv(std::ostream& out, const RunConfig& config,
                     const std::vector<SweepRecord>& records) {
    const bool stochastic = config.ensemble_size > 0;
    out << "# stalz sweep config=" << config_hash(config) << "\n";
    out << "tau_ms,protocol,fidelity_unitary,fidelity_dephasing,rel_intensity,sigma_cost";
    if (stochastic) out << ",fidelity_stochastic";
    out << "\n";
    for (const auto& rec : records) {
        out << fmt9(rec.tau_ms) << ',' << protocol_name(rec.protocol) << ','
            << fmt9(rec.fidelity_unitary) << ',' << fmt9(rec.fidelity_dephasing) << ','
            << fmt9(rec.rel_intensity) << ',' << fmt9(rec.sigma_cost);
        if (stochastic) out << ',' << fmt9(rec.fidelity_stochastic.value_or(0.0));
        out << "\n";
    }
}

BoundaryReport compute_boundaries(const RunConfig& config) {
    config.validate();
    const LZParams params = config.lz(1.0);
    BoundaryReport report;
    report.tau_adiabatic_ms = tau_adiabatic(params);
    report.tau_boundary_intensity_ms = tau_boundary_intensity(params);
    report.tau_boundary_sigma_ms = tau_boundary_sigma(params);
    return report;
}

void cmd_sweep(const RunConfig& config, std::ostream& summary) {
    const std::vector<SweepRecord> records = run_sweep(config);
    std::ofstream file(config.output_path, std::ios::binary);
    if (!file) throw io_error("cannot open output file '" + config.output_path + "'");
    write_sweep_csv(file, config, records);
    file.flush();
    if (!file) throw io_error("failed writing output file '" + config.output_path + "'");
    summary << "config " << config_hash(config) << "\n";
    summary << "rows   " << records.size() << "\n";
    summary << "output " << config.output_path << "\n";
}

void cmd_boundaries(const RunConfig& config, std::ostream& out, const std::string& csv_path) {
    const BoundaryReport report = compute_boundaries(config);
    out << "tau_adiabatic_ms          " << fmt6(report.tau_adiabatic_ms) << "\n";
    out << "tau_boundary_intensity_ms " << fmt6(report.tau_boundary_intensity_ms) << "\n";
    out << "tau_boundary_sigma_ms     " << fmt6(report.tau_boundary_sigma_ms) << "\n";
    if (!csv_path.empty()) {
        std::ofstream file(csv_path, std::ios::binary);
        if (!file) throw io_error("cannot open output file '" + csv_path + "'");
        file << "# stalz boundaries config=" << config_hash(config) << "\n";
        file << "tau_adiabatic_ms,tau_boundary_intensity_ms,tau_boundary_sigma_ms\n";
        file << fmt9(report.tau_adiabatic_ms) << ',' << fmt9(report.tau_boundary_intensity_ms)
             << ',' << fmt9(report.tau_boundary_sigma_ms) << "\n";
    }
}

void cmd_run(const RunConfig& config, ProtocolKind protocol, double tau, std::ostream& csv) {
    config.validate();
    if (!(tau > 0.0)) throw config_error("tau: must be positive");
    const LZParams params = config.lz(tau);
    const ProtocolSpec spec = make_spec(protocol, params);
    // at least 200 output points regardless of the configured step floor
    const int steps = std::max(200, effective_steps(config, spec));
    const int stride = std::max(1, steps / 400);

    csv << "# stalz run protocol=" << protocol_name(protocol) << " tau_ms=" << fmt9(tau)
        << " gamma_per_ms=" << fmt9(config.gamma_per_ms) << " config=" << config_hash(config)
        << "\n";
    csv << "t_ms,pop0,pop1,coherence_abs,fidelity,trace\n";

    const auto emit = [&](double t, double pop0, double pop1, double coh, double fid,
                          double trace) {
        csv << fmt9(t) << ',' << fmt9(pop0) << ',' << fmt9(pop1) << ',' << fmt9(coh) << ','
            << fmt9(fid) << ',' << fmt9(trace) << "\n";
    };

    if (config.gamma_per_ms > 0.0) {
        const EvolutionResult result =
            propagate_lindblad(spec, NoiseConfig(config.gamma_per_ms), steps, stride);
        for (std::size_t i = 0; i < result.times.size(); ++i) {
            const double t = result.times[i];
            const DensityMatrix& rho = result.density()[i];
            const PureState target = target_state(params, spec.schedule(), t / tau);
            emit(t, rho.population(0), rho.population(1), std::abs(rho.coherence(0, 1)),
                 fidelity(rho, target), rho.entries().trace().real());
        }
    } else {
        const EvolutionResult result = propagate_unitary(spec, steps, stride);
        for (std::size_t i = 0; i < result.times.size(); ++i) {
            const double t = result.times[i];
            const PureState& psi = result.pure()[i];
            const PureState target = target_state(params, spec.schedule(), t / tau);
            const double pop0 = std::norm(psi.amplitude(0));
            const double pop1 = std::norm(psi.amplitude(1));
            emit(t, pop0, pop1, std::abs(psi.amplitude(0) * std::conj(psi.amplitude(1))),
                 fidelity(psi, target), pop0 + pop1);
        }
    }
}

void cmd_waveform(const RunConfig& config, ProtocolKind protocol, double tau,
                  double sample_rate, std::ostream& csv) {
    config.validate();
    if (!(tau > 0.0)) throw config_error("tau: must be positive");
    if (!(sample_rate > 0.0)) throw config_error("sample_rate: must be positive");
    if (sample_rate * tau < 16.0)
        throw config_error("sample_rate: need sample_rate * tau >= 16 samples");
    const LZParams params = config.lz(tau);
    const ProtocolSpec spec = make_spec(protocol, params); // validates the protocol choice
    const Schedule& sched = spec.schedule();

    const long long n = std::llround(sample_rate * tau);
    csv << "# stalz waveform protocol=" << protocol_name(protocol) << " tau_ms=" << fmt9(tau)
        << " sample_rate_per_ms=" << fmt9(sample_rate) << " config=" << config_hash(config)
        << "\n";
    csv << "t_ms,field,rabi_amplitude,detuning,quadrature_phase\n";

    const bool adiabatic_field =
        protocol == ProtocolKind::adiabatic || protocol == ProtocolKind::traditional_tqd;
    const bool cd_field =
        protocol == ProtocolKind::optimal_tqd || protocol == ProtocolKind::traditional_tqd;
    constexpr double kQuadrature = 1.5707963267948966; // pi/2: the sigma_y quadrature

    for (long long k = 0; k <= n; ++k) {
        const double t = tau * static_cast<double>(k) / static_cast<double>(n);
        const double s = static_cast<double>(k) / static_cast<double>(n);
        if (adiabatic_field) {
            csv << fmt9(t) << ",adiabatic," << fmt9(rabi(params, sched, s)) << ','
                << fmt9(params.delta) << ",0\n";
        }
        if (cd_field) {
            csv << fmt9(t) << ",counterdiabatic," << fmt9(sched.dtheta(s) / (2.0 * tau)) << ','
                << "0," << fmt9(kQuadrature) << "\n";
        }
    }
}

} // namespace stalz
