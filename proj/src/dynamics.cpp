#include "stalz/dynamics.hpp"

#include <cmath>
#include <random>

#include "stalz/numerics.hpp"

namespace stalz {

namespace {

constexpr Complex kI{0.0, 1.0};

using Matrix2 = Eigen::Matrix2cd;
using Vector2 = Eigen::Vector2cd;

// exp(-i (c*I + a.sigma) dt) in the closed Pauli form.
Matrix2 step_unitary(const PauliCoeffs& h, double dt) {
    const double a = std::sqrt(h.x * h.x + h.y * h.y + h.z * h.z);
    const Complex phase = std::exp(Complex(0.0, -h.id * dt));
    Matrix2 u;
    if (a * std::abs(dt) < 1e-300) {
        u = Matrix2::Identity();
    } else {
        const double cs = std::cos(a * dt);
        const double sn = std::sin(a * dt) / a;
        u(0, 0) = Complex(cs, -sn * h.z);
        u(0, 1) = Complex(-sn * h.y, -sn * h.x);
        u(1, 0) = Complex(sn * h.y, -sn * h.x);
        u(1, 1) = Complex(cs, sn * h.z);
    }
    return phase * u;
}

Matrix2 to_matrix2(const PauliCoeffs& c) {
    Matrix2 m;
    m(0, 0) = Complex(c.id + c.z, 0.0);
    m(0, 1) = Complex(c.x, -c.y);
    m(1, 0) = Complex(c.x, c.y);
    m(1, 1) = Complex(c.id - c.z, 0.0);
    return m;
}

// Dephasing master equation right-hand side.
Matrix2 lindblad_rhs(const Matrix2& h, const Matrix2& rho, double gamma) {
    Matrix2 out = -kI * (h * rho - rho * h);
    if (gamma != 0.0) {
        Matrix2 dis;
        dis(0, 0) = 0.0;
        dis(1, 1) = 0.0;
        dis(0, 1) = -2.0 * rho(0, 1);
        dis(1, 0) = -2.0 * rho(1, 0);
        out += gamma * dis;
    }
    return out;
}

int resolve_stride(int steps, int record_stride) {
    if (record_stride < 0)
        throw std::invalid_argument("propagate: record_stride must be >= 0");
    if (record_stride == 0) return std::max(1, steps / 400);
    return record_stride;
}

bool should_record(int k, int steps, int stride) { return k == steps || k % stride == 0; }

double peak_norm(const HamiltonianFn& h, double tau) {
    double peak = 0.0;
    for (int i = 0; i <= 100; ++i) peak = std::max(peak, h(tau * i / 100.0).op_norm());
    return peak;
}

void check_stability(double tau, int steps, double h_norm_max, double gamma) {
    const double dt = tau / steps;
    if (dt * std::max(h_norm_max, gamma) >= 0.05)
        throw std::invalid_argument(
            "propagate_lindblad: dt*max(||H||,gamma) >= 0.05; need at least " +
            std::to_string(stable_steps(tau, h_norm_max, gamma)) + " steps");
}

HamiltonianFn spec_hamiltonian(const ProtocolSpec& spec) {
    const double tau = spec.params().tau;
    return [spec, tau](double t) { return spec.coeffs(t / tau); };
}

PureState make_state(const Vector2& v) {
    Vector amp(2);
    amp << v(0), v(1);
    return PureState(std::move(amp), 1e-10);
}

DensityMatrix make_density(const Matrix2& m, double tol, double psd_tol) {
    Matrix entries(2, 2);
    entries = 0.5 * (m + m.adjoint());
    return DensityMatrix(std::move(entries), tol, psd_tol);
}

} // namespace

NoiseConfig::NoiseConfig(double gamma_, int ensemble_size_, std::uint64_t rng_seed_)
    : gamma(gamma_), ensemble_size(ensemble_size_), rng_seed(rng_seed_) {
    if (!(gamma >= 0.0))
        throw std::invalid_argument("NoiseConfig: gamma must be >= 0");
    if (ensemble_size < 1)
        throw std::invalid_argument("NoiseConfig: ensemble_size must be >= 1");
}

int stable_steps(double tau, double h_norm_max, double gamma) {
    const double rate = std::max(h_norm_max, gamma);
    return std::max(1, static_cast<int>(std::ceil(tau * rate / 0.05)) + 1);
}

EvolutionResult propagate_unitary(const HamiltonianFn& h, const PureState& psi0, double tau,
                                  int steps, const PureState* fidelity_target,
                                  int record_stride) {
    if (psi0.dim() != 2)
        throw std::invalid_argument("propagate_unitary: two-level states only");
    if (steps < 1) throw std::invalid_argument("propagate_unitary: steps must be >= 1");
    if (!(tau > 0.0)) throw std::invalid_argument("propagate_unitary: tau must be positive");
    const int stride = resolve_stride(steps, record_stride);
    const double dt = tau / steps;

    Vector2 psi;
    psi << psi0.amplitude(0), psi0.amplitude(1);

    EvolutionResult result;
    std::vector<PureState> traj;
    traj.reserve(static_cast<std::size_t>(steps / stride) + 2);
    result.times.push_back(0.0);
    traj.push_back(make_state(psi));
    for (int k = 0; k < steps; ++k) {
        const double t_mid = (k + 0.5) * dt;
        psi = step_unitary(h(t_mid), dt) * psi;
        if (should_record(k + 1, steps, stride)) {
            result.times.push_back((k + 1) * dt);
            traj.push_back(make_state(psi));
        }
    }
    result.states = std::move(traj);
    if (fidelity_target)
        result.final_fidelity = fidelity(result.pure().back(), *fidelity_target);
    return result;
}

EvolutionResult propagate_unitary(const ProtocolSpec& spec, int steps, int record_stride) {
    if (steps < 100)
        throw std::invalid_argument("propagate_unitary: steps must be >= 100");
    const PureState target = target_state(spec.params(), spec.schedule(), 1.0);
    return propagate_unitary(spec_hamiltonian(spec), PureState::basis(2, 0), spec.params().tau,
                             steps, &target, record_stride);
}

EvolutionResult propagate_lindblad(const HamiltonianFn& h, const DensityMatrix& rho0, double tau,
                                   double gamma, int steps, const PureState* fidelity_target,
                                   int record_stride) {
    if (rho0.dim() != 2)
        throw std::invalid_argument("propagate_lindblad: two-level states only");
    if (steps < 1) throw std::invalid_argument("propagate_lindblad: steps must be >= 1");
    if (!(tau > 0.0)) throw std::invalid_argument("propagate_lindblad: tau must be positive");
    if (!(gamma >= 0.0)) throw std::invalid_argument("propagate_lindblad: gamma must be >= 0");
    check_stability(tau, steps, peak_norm(h, tau), gamma);
    const int stride = resolve_stride(steps, record_stride);
    const double dt = tau / steps;

    Matrix2 rho = rho0.entries();

    EvolutionResult result;
    std::vector<DensityMatrix> traj;
    traj.reserve(static_cast<std::size_t>(steps / stride) + 2);
    result.times.push_back(0.0);
    traj.push_back(make_density(rho, 1e-6, 1e-6));
    for (int k = 0; k < steps; ++k) {
        const double t = k * dt;
        const Matrix2 h0 = to_matrix2(h(t));
        const Matrix2 h_mid = to_matrix2(h(t + 0.5 * dt));
        const Matrix2 h1 = to_matrix2(h(t + dt));
        const Matrix2 k1 = lindblad_rhs(h0, rho, gamma);
        const Matrix2 k2 = lindblad_rhs(h_mid, rho + (0.5 * dt) * k1, gamma);
        const Matrix2 k3 = lindblad_rhs(h_mid, rho + (0.5 * dt) * k2, gamma);
        const Matrix2 k4 = lindblad_rhs(h1, rho + dt * k3, gamma);
        rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        rho = 0.5 * (rho + rho.adjoint()).eval();
        if (should_record(k + 1, steps, stride)) {
            const double trace = rho.trace().real();
            if (std::abs(trace - 1.0) > 1e-6)
                throw numeric_error("propagate_lindblad: trace drifted beyond 1e-6");
            result.times.push_back((k + 1) * dt);
            try {
                traj.push_back(make_density(rho, 1e-6, 1e-6));
            } catch (const std::invalid_argument&) {
                throw numeric_error(
                    "propagate_lindblad: density matrix lost positivity beyond 1e-6");
            }
        }
    }
    result.states = std::move(traj);
    if (fidelity_target)
        result.final_fidelity = fidelity(result.density().back(), *fidelity_target);
    return result;
}

EvolutionResult propagate_lindblad(const ProtocolSpec& spec, const NoiseConfig& noise, int steps,
                                   int record_stride) {
    if (steps < 100)
        throw std::invalid_argument("propagate_lindblad: steps must be >= 100");
    const PureState target = target_state(spec.params(), spec.schedule(), 1.0);
    return propagate_lindblad(spec_hamiltonian(spec), PureState::basis(2, 0).projector(),
                              spec.params().tau, noise.gamma, steps, &target, record_stride);
}

EvolutionResult propagate_stochastic(const HamiltonianFn& h, const PureState& psi0, double tau,
                                     const NoiseConfig& noise, int steps,
                                     const PureState* fidelity_target, int record_stride) {
    if (psi0.dim() != 2)
        throw std::invalid_argument("propagate_stochastic: two-level states only");
    if (steps < 1) throw std::invalid_argument("propagate_stochastic: steps must be >= 1");
    if (!(tau > 0.0)) throw std::invalid_argument("propagate_stochastic: tau must be positive");
    const int stride = resolve_stride(steps, record_stride);
    const double dt = tau / steps;
    const double xi_sigma = (noise.gamma > 0.0) ? std::sqrt(noise.gamma / dt) : 0.0;

    // The deterministic part of each step is shared by all trajectories.
    std::vector<PauliCoeffs> drive(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) drive[static_cast<std::size_t>(k)] = h((k + 0.5) * dt);

    std::vector<int> record_ks;
    for (int k = 0; k <= steps; ++k)
        if (should_record(k, steps, stride)) record_ks.push_back(k);
    std::vector<Matrix2> acc(record_ks.size(), Matrix2::Zero());

    Vector2 start;
    start << psi0.amplitude(0), psi0.amplitude(1);

    for (int m = 0; m < noise.ensemble_size; ++m) {
        std::mt19937_64 rng(trajectory_seed(noise.rng_seed, static_cast<std::uint64_t>(m)));
        std::normal_distribution<double> gauss(0.0, 1.0);
        Vector2 psi = start;
        std::size_t rec = 0;
        if (record_ks[rec] == 0) acc[rec++] += psi * psi.adjoint();
        for (int k = 0; k < steps; ++k) {
            PauliCoeffs c = drive[static_cast<std::size_t>(k)];
            if (xi_sigma > 0.0) c.z += xi_sigma * gauss(rng);
            psi = step_unitary(c, dt) * psi;
            if (rec < record_ks.size() && record_ks[rec] == k + 1)
                acc[rec++] += psi * psi.adjoint();
        }
    }

    EvolutionResult result;
    std::vector<DensityMatrix> traj;
    traj.reserve(acc.size());
    for (std::size_t r = 0; r < acc.size(); ++r) {
        result.times.push_back(record_ks[r] * dt);
        traj.push_back(make_density(acc[r] / static_cast<double>(noise.ensemble_size), 1e-6,
                                    1e-6));
    }
    result.states = std::move(traj);
    if (fidelity_target)
        result.final_fidelity = fidelity(result.density().back(), *fidelity_target);
    return result;
}

EvolutionResult propagate_stochastic(const ProtocolSpec& spec, const NoiseConfig& noise,
                                     int steps, int record_stride) {
    if (steps < 100)
        throw std::invalid_argument("propagate_stochastic: steps must be >= 100");
    if (noise.ensemble_size < 100)
        throw std::invalid_argument("propagate_stochastic: ensemble_size must be >= 100");
    const PureState target = target_state(spec.params(), spec.schedule(), 1.0);
    return propagate_stochastic(spec_hamiltonian(spec), PureState::basis(2, 0),
                                spec.params().tau, noise, steps, &target, record_stride);
}

} // namespace stalz
