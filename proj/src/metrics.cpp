#include "stalz/metrics.hpp"

#include <cmath>

#include "stalz/numerics.hpp"

namespace stalz {

namespace {

constexpr double kBracketLo = 1e-4; // ms
constexpr double kBracketHi = 10.0; // ms

// int_0^1 Omega_R^2(s) ds, closed form for the linear schedule.
double intensity_ad(const LZParams& p, const Schedule& sched) {
    if (sched.linear_form()) {
        const double th0 = p.theta0;
        return p.delta * p.delta * (std::tan(th0) / th0 - 1.0);
    }
    return integrate_gl(
        [&](double s) {
            const double w = rabi(p, sched, s);
            return w * w;
        },
        0.0, 1.0, 128);
}

// int_0^1 [d_s theta / (2 tau)]^2 ds, closed form for the linear schedule.
double intensity_opsa(const LZParams& p, const Schedule& sched, double tau) {
    if (sched.linear_form()) return p.theta0 * p.theta0 / (4.0 * tau * tau);
    return integrate_gl(
        [&](double s) {
            const double w = sched.dtheta(s) / (2.0 * tau);
            return w * w;
        },
        0.0, 1.0, 128);
}

LZParams with_tau(const LZParams& p, double tau) { return LZParams(p.delta, p.theta0, tau); }

// Both crossover objectives decrease in tau. A negative value already at the
// lower bracket edge means the crossover sits below it; extend downward
// instead of failing so vanishing-drive parameters still report a time.
double find_crossover(const std::function<double(double)>& objective, const char* who) {
    double lo = kBracketLo;
    double flo = objective(lo);
    const double fhi = objective(kBracketHi);
    while (flo < 0.0 && lo > 1e-10) {
        lo *= 0.1;
        flo = objective(lo);
    }
    if ((flo < 0.0) == (fhi < 0.0))
        throw bracket_error(std::string(who) +
                            ": no crossing at or below the [1e-4, 10] ms bracket; the "
                            "objective does not change sign for these parameters");
    return bisect(objective, lo, kBracketHi);
}

} // namespace

double avg_intensity(const ProtocolSpec& spec) {
    const LZParams& p = spec.params();
    const Schedule& sched = spec.schedule();
    switch (spec.kind()) {
        case ProtocolKind::adiabatic:
            return intensity_ad(p, sched);
        case ProtocolKind::optimal_tqd:
            return intensity_opsa(p, sched, p.tau);
        case ProtocolKind::traditional_tqd:
            return intensity_ad(p, sched) + intensity_opsa(p, sched, p.tau);
        case ProtocolKind::generalized_tqd:
            // Transverse drive power of the actual Hamiltonian.
            return integrate_gl(
                [&](double s) {
                    const PauliCoeffs c = spec.coeffs(s);
                    return c.x * c.x + c.y * c.y;
                },
                0.0, 1.0, 128);
    }
    throw std::logic_error("avg_intensity: unknown protocol kind");
}

double sigma_cost(const ProtocolSpec& spec, int nodes) {
    if (nodes < 64) throw std::invalid_argument("sigma_cost: need at least 64 nodes");
    const double tau = spec.params().tau;
    return tau * integrate_gl(
                     [&](double s) { return std::sqrt(hs_norm_sq(spec.hamiltonian(s))); }, 0.0,
                     1.0, nodes);
}

CostReport relative_intensities(const LZParams& params, double tau) {
    return relative_intensities(params, Schedule::linear(params.theta0), tau);
}

CostReport relative_intensities(const LZParams& params, const Schedule& schedule, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("relative_intensities: tau must be positive");
    const LZParams p = with_tau(params, tau);
    CostReport report;
    report.tau = tau;
    const double base = intensity_ad(p, schedule);
    report.i_ad = 1.0;
    report.i_opsa = intensity_opsa(p, schedule, tau) / base;
    report.i_sa = 1.0 + report.i_opsa;
    report.sigma_ad = sigma_cost(ProtocolSpec::adiabatic(p, schedule));
    report.sigma_sa = sigma_cost(ProtocolSpec::traditional_tqd(p, schedule));
    report.sigma_opsa = sigma_cost(ProtocolSpec::optimal_tqd(p, schedule));
    return report;
}

double tau_adiabatic(const LZParams& params) {
    return tau_adiabatic(params, Schedule::linear(params.theta0));
}

double tau_adiabatic(const LZParams& params, const Schedule& schedule) {
    // |<E_-| d_s H_0 |E_+>| / g^2 on a dense grid, then golden-section refinement.
    const auto objective = [&](double s) {
        const EigenPair pair = eigenpair(params, schedule, s);
        const double th = schedule.theta(s);
        const double drabi = params.delta * schedule.dtheta(s) / (std::cos(th) * std::cos(th));
        const Complex elem =
            pair.v_minus.amplitudes().dot(Operator::sigma_x().entries() * pair.v_plus.amplitudes());
        const double g = gap(params, schedule, s);
        return std::abs(-drabi * elem) / (g * g);
    };
    const int n = 4000;
    double best_s = 0.0;
    double best = objective(0.0);
    for (int i = 1; i <= n; ++i) {
        const double s = static_cast<double>(i) / n;
        const double v = objective(s);
        if (v > best) {
            best = v;
            best_s = s;
        }
    }
    const double lo = std::max(0.0, best_s - 1.0 / n);
    const double hi = std::min(1.0, best_s + 1.0 / n);
    const double s_star = golden_max(objective, lo, hi, 1e-13);
    return std::max(best, objective(s_star));
}

double tau_boundary_intensity(const LZParams& params) {
    return tau_boundary_intensity(params, Schedule::linear(params.theta0));
}

double tau_boundary_intensity(const LZParams& params, const Schedule& schedule) {
    const auto objective = [&](double tau) {
        const LZParams p = with_tau(params, tau);
        return intensity_opsa(p, schedule, tau) / intensity_ad(p, schedule) - 1.0;
    };
    return find_crossover(objective, "tau_boundary_intensity");
}

double tau_boundary_sigma(const LZParams& params) {
    return tau_boundary_sigma(params, Schedule::linear(params.theta0));
}

double tau_boundary_sigma(const LZParams& params, const Schedule& schedule) {
    // Normalize by sigma_ad so the root tolerance is dimensionless.
    const auto objective = [&](double tau) {
        const LZParams p = with_tau(params, tau);
        const double ad = sigma_cost(ProtocolSpec::adiabatic(p, schedule));
        const double op = sigma_cost(ProtocolSpec::optimal_tqd(p, schedule));
        return op / ad - 1.0;
    };
    return find_crossover(objective, "tau_boundary_sigma");
}

} // namespace stalz
