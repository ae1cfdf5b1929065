// protocols.hpp — Landau-Zener driving Hamiltonians: adiabatic, counter-diabatic,
// traditional / optimal / generalized transitionless families
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "stalz/qops.hpp"

namespace stalz {

// Physical parameters of the Landau-Zener sweep.
struct LZParams {
    double delta;  // detuning, rad/ms
    double theta0; // final mixing angle, rad, in (0, pi/2)
    double tau;    // total evolution time, ms

    LZParams(double delta, double theta0, double tau);
};

// Mixing-angle schedule theta(s) on s in [0,1] with its derivative.
// The linear schedule theta(s) = theta0*s is the one with a time-independent
// counter-diabatic term.
class Schedule {
public:
    Schedule(std::function<double(double)> theta, std::function<double(double)> dtheta);

    static Schedule linear(double theta0);

    double theta(double s) const { return theta_(s); }
    double dtheta(double s) const { return dtheta_(s); }
    bool linear_form() const { return linear_; }

private:
    std::function<double(double)> theta_;
    std::function<double(double)> dtheta_;
    bool linear_ = false;
};

// Free phase functions theta_n(t) attached to each tracked eigenstate.
// Level 0 is the branch attached to |E_+(s)> (the ground level for delta > 0),
// level 1 the |E_-(s)> branch; for general-N tracking, levels follow the
// initial ascending eigenvalue order.
class PhaseChoice {
public:
    enum class Kind { adiabatic, null_phase, custom };

    static PhaseChoice adiabatic();
    static PhaseChoice null_phase();
    static PhaseChoice custom(std::function<double(int, double)> theta_n); // (level, t ms) -> rad/ms

    Kind kind() const { return kind_; }

    // theta_n for the given level; `energy` is E_n(t), used by the adiabatic kind.
    double value(int level, double t, double energy) const;

private:
    explicit PhaseChoice(Kind kind) : kind_(kind) {}
    Kind kind_;
    std::function<double(int, double)> custom_;
};

enum class ProtocolKind { adiabatic, traditional_tqd, optimal_tqd, generalized_tqd };

// Coefficients of a 2x2 Hermitian operator in the {sigma_x, sigma_y, sigma_z, I} basis.
struct PauliCoeffs {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double id = 0.0;

    double op_norm() const; // upper bound |a| + |id| on the spectral norm
};

Operator to_operator(const PauliCoeffs& c);

// Which Hamiltonian family drives the evolution.
class ProtocolSpec {
public:
    static ProtocolSpec adiabatic(const LZParams& params);
    static ProtocolSpec adiabatic(const LZParams& params, const Schedule& schedule);
    static ProtocolSpec traditional_tqd(const LZParams& params);
    static ProtocolSpec traditional_tqd(const LZParams& params, const Schedule& schedule);
    static ProtocolSpec optimal_tqd(const LZParams& params);
    static ProtocolSpec optimal_tqd(const LZParams& params, const Schedule& schedule);
    static ProtocolSpec generalized_tqd(const LZParams& params, const PhaseChoice& phases);
    static ProtocolSpec generalized_tqd(const LZParams& params, const PhaseChoice& phases,
                                        const Schedule& schedule);

    ProtocolKind kind() const { return kind_; }
    const LZParams& params() const { return params_; }
    const Schedule& schedule() const { return schedule_; }
    const PhaseChoice& phases() const { return phases_; }

    PauliCoeffs coeffs(double s) const;
    Operator hamiltonian(double s) const { return to_operator(coeffs(s)); }

private:
    ProtocolSpec(ProtocolKind kind, LZParams params, Schedule schedule, PhaseChoice phases);

    ProtocolKind kind_;
    LZParams params_;
    Schedule schedule_;
    PhaseChoice phases_;
};

const char* protocol_name(ProtocolKind kind);
std::optional<ProtocolKind> parse_protocol(const std::string& name);

// ---- Landau-Zener closed forms ---------------------------------------------

// Rabi frequency Omega_R(s) = delta * tan(theta(s)); throws divergence_error
// when theta(s) reaches pi/2.
double rabi(const LZParams& params, const Schedule& schedule, double s);
double rabi(const LZParams& params, double s);

// H_0(s) = -delta*sigma_z - Omega_R(s)*sigma_x
Operator h0(const LZParams& params, const Schedule& schedule, double s);
Operator h0(const LZParams& params, double s);

struct EigenPair {
    double e_plus;     // -delta*sec(theta), level attached to (cos t/2, sin t/2)
    PureState v_plus;
    double e_minus;    // +delta*sec(theta)
    PureState v_minus;
};

EigenPair eigenpair(const LZParams& params, const Schedule& schedule, double s);
EigenPair eigenpair(const LZParams& params, double s);

// Spectral gap |E_+ - E_-| = 2*delta*sec(theta) = 2*sqrt(delta^2 + Omega_R^2).
double gap(const LZParams& params, const Schedule& schedule, double s);
double gap(const LZParams& params, double s);

// H_CD(s) = [d_s theta(s) / (2 tau)] sigma_y
Operator h_cd(const LZParams& params, const Schedule& schedule, double s);
Operator h_cd(const LZParams& params, double s);

// H_SA = H_0 + H_CD
Operator h_sa(const LZParams& params, const Schedule& schedule, double s);
Operator h_sa(const LZParams& params, double s);

// Energetically optimal generalized TQD Hamiltonian; equals H_CD for this model.
Operator h_opsa(const LZParams& params, const Schedule& schedule, double s);
Operator h_opsa(const LZParams& params, double s);

// Generalized TQD Hamiltonian from the analytic LZ eigenframe:
//   H = i(|dn_+><n_+| + |dn_-><n_-|) - theta_+|n_+><n_+| - theta_-|n_-><n_-|
Operator gsa_lz(const LZParams& params, const Schedule& schedule, double s,
                const PhaseChoice& phases);
Operator gsa_lz(const LZParams& params, double s, const PhaseChoice& phases);

// Generalized TQD from a sampled Hamiltonian trajectory (general dimension).
// Eigenframes are matched between adjacent samples by maximal overlap and
// gauge-smoothed; |dn/dt> uses three-point differences. Output symmetrized.
std::vector<Operator> gsa_general(const std::vector<Operator>& h_samples,
                                  const std::vector<double>& times,
                                  const PhaseChoice& phases);

// Instantaneous target |E_+(s)>; global phase dropped.
PureState target_state(const LZParams& params, const Schedule& schedule, double s);
PureState target_state(const LZParams& params, double s);

// Diagnostic: accumulated phase tau * int_0^s theta_level(xi) dxi in rad.
double accumulated_phase(const ProtocolSpec& spec, double s, int level = 0);

} // namespace stalz
