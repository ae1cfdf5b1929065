// dynamics.hpp — unitary, Lindblad-dephasing and stochastic-ensemble propagation
// of the two-level protocols
#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "stalz/protocols.hpp"

namespace stalz {

struct NoiseConfig {
    double gamma;              // dephasing rate, 1/ms
    int ensemble_size;         // trajectories for the stochastic channel
    std::uint64_t rng_seed;

    NoiseConfig(double gamma, int ensemble_size = 1, std::uint64_t rng_seed = 0);
};

// Sampled trajectory plus the final root fidelity against the target state.
struct EvolutionResult {
    std::vector<double> times; // ms
    std::variant<std::vector<PureState>, std::vector<DensityMatrix>> states;
    double final_fidelity = 0.0;

    bool is_pure() const { return states.index() == 0; }
    const std::vector<PureState>& pure() const { return std::get<0>(states); }
    const std::vector<DensityMatrix>& density() const { return std::get<1>(states); }
};

// Time-dependent two-level Hamiltonian in Pauli coefficients; t in ms.
using HamiltonianFn = std::function<PauliCoeffs(double t)>;

// ---- protocol-level entry points; initial state |0> -------------------------

// Exact midpoint-exponential stepping: U_k = exp(-i H(t_k + dt/2) dt).
EvolutionResult propagate_unitary(const ProtocolSpec& spec, int steps, int record_stride = 0);

// Classical fixed-step RK4 on the dephasing master equation
//   drho/dt = -i[H(t), rho] + gamma (sz rho sz - rho),
// Hermitized every step. Requires dt * max(||H||, gamma) < 0.05.
EvolutionResult propagate_lindblad(const ProtocolSpec& spec, const NoiseConfig& noise, int steps,
                                   int record_stride = 0);

// Ensemble of trajectories under H(t) + xi(t) sz with white Gaussian xi,
// xi_k ~ Normal(0, sqrt(gamma/dt)) per step; returns the averaged projector.
EvolutionResult propagate_stochastic(const ProtocolSpec& spec, const NoiseConfig& noise,
                                     int steps, int record_stride = 0);

// ---- generic two-level engines (custom drives, test oracles) ---------------

EvolutionResult propagate_unitary(const HamiltonianFn& h, const PureState& psi0, double tau,
                                  int steps, const PureState* fidelity_target = nullptr,
                                  int record_stride = 0);

EvolutionResult propagate_lindblad(const HamiltonianFn& h, const DensityMatrix& rho0, double tau,
                                   double gamma, int steps,
                                   const PureState* fidelity_target = nullptr,
                                   int record_stride = 0);

EvolutionResult propagate_stochastic(const HamiltonianFn& h, const PureState& psi0, double tau,
                                     const NoiseConfig& noise, int steps,
                                     const PureState* fidelity_target = nullptr,
                                     int record_stride = 0);

// Smallest step count satisfying the Lindblad stability contract
// dt * max(||H||, gamma) < 0.05, given the peak Hamiltonian norm.
int stable_steps(double tau, double h_norm_max, double gamma);

} // namespace stalz
