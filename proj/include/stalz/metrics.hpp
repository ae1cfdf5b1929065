// metrics.hpp — energy-cost functionals, adiabatic timescale and the crossover
// times between optimal TQD and adiabatic driving
#pragma once

#include "stalz/protocols.hpp"

namespace stalz {

// Per-tau cost figures. Relative intensities are normalized so i_ad = 1;
// sigma costs are in rad (the time integral of the Hamiltonian norm is
// dimensionless in rad/ms * ms).
struct CostReport {
    double tau = 0.0;
    double i_ad = 1.0;
    double i_sa = 0.0;
    double i_opsa = 0.0;
    double sigma_ad = 0.0;
    double sigma_sa = 0.0;
    double sigma_opsa = 0.0;
};

// Average field intensity (1/tau) int_0^tau I(t) dt with the amplifier
// constant set to 1; counts the transverse (x, y) drive components.
double avg_intensity(const ProtocolSpec& spec);

// All six cost figures for the given parameters at total time tau.
CostReport relative_intensities(const LZParams& params, double tau);
CostReport relative_intensities(const LZParams& params, const Schedule& schedule, double tau);

// Sigma(tau) = int_0^tau sqrt(Tr{H^2(t)}) dt by Gauss-Legendre quadrature.
double sigma_cost(const ProtocolSpec& spec, int nodes = 64);

// tau_ad = max_s |<E_-(s)| d_s H_0(s) |E_+(s)>| / g^2(s)
double tau_adiabatic(const LZParams& params);
double tau_adiabatic(const LZParams& params, const Schedule& schedule);

// Total time where the optimal-TQD relative intensity crosses 1; bisection on
// [1e-4, 10] ms.
double tau_boundary_intensity(const LZParams& params);
double tau_boundary_intensity(const LZParams& params, const Schedule& schedule);

// Total time where sigma_opsa crosses sigma_ad; same bracket.
double tau_boundary_sigma(const LZParams& params);
double tau_boundary_sigma(const LZParams& params, const Schedule& schedule);

} // namespace stalz
