#include "stalz/protocols.hpp"

#include <cmath>

#include "stalz/numerics.hpp"

namespace stalz {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kHalfPi = 1.5707963267948966;

double checked_theta(const Schedule& schedule, double s) {
    const double th = schedule.theta(s);
    if (th >= kHalfPi)
        throw divergence_error("rabi: mixing angle reached pi/2, Rabi frequency diverges");
    return th;
}

// Three-point Lagrange derivative at x, from samples (x0,f0), (x1,f1), (x2,f2).
double lagrange3_weight0(double x, double x0, double x1, double x2) {
    return ((x - x1) + (x - x2)) / ((x0 - x1) * (x0 - x2));
}

} // namespace

LZParams::LZParams(double delta_, double theta0_, double tau_)
    : delta(delta_), theta0(theta0_), tau(tau_) {
    if (!(delta > 0.0))
        throw std::invalid_argument("LZParams: delta must be positive");
    if (!(theta0 > 0.0) || !(theta0 < kHalfPi))
        throw std::invalid_argument("LZParams: theta0 must lie in (0, pi/2)");
    if (!(tau > 0.0))
        throw std::invalid_argument("LZParams: tau must be positive");
}

Schedule::Schedule(std::function<double(double)> theta, std::function<double(double)> dtheta)
    : theta_(std::move(theta)), dtheta_(std::move(dtheta)) {
    if (!theta_ || !dtheta_)
        throw std::invalid_argument("Schedule: theta and dtheta must be callable");
}

Schedule Schedule::linear(double theta0) {
    Schedule s([theta0](double x) { return theta0 * x; }, [theta0](double) { return theta0; });
    s.linear_ = true;
    return s;
}

PhaseChoice PhaseChoice::adiabatic() { return PhaseChoice(Kind::adiabatic); }

PhaseChoice PhaseChoice::null_phase() { return PhaseChoice(Kind::null_phase); }

PhaseChoice PhaseChoice::custom(std::function<double(int, double)> theta_n) {
    if (!theta_n)
        throw std::invalid_argument("PhaseChoice::custom: phase function must be callable");
    PhaseChoice p(Kind::custom);
    p.custom_ = std::move(theta_n);
    return p;
}

double PhaseChoice::value(int level, double t, double energy) const {
    switch (kind_) {
        case Kind::adiabatic: return -energy;
        case Kind::null_phase: return 0.0;
        case Kind::custom: return custom_(level, t);
    }
    return 0.0;
}

double PauliCoeffs::op_norm() const {
    return std::sqrt(x * x + y * y + z * z) + std::abs(id);
}

Operator to_operator(const PauliCoeffs& c) {
    Matrix m(2, 2);
    m(0, 0) = Complex(c.id + c.z, 0.0);
    m(0, 1) = Complex(c.x, -c.y);
    m(1, 0) = Complex(c.x, c.y);
    m(1, 1) = Complex(c.id - c.z, 0.0);
    return Operator(m);
}

ProtocolSpec::ProtocolSpec(ProtocolKind kind, LZParams params, Schedule schedule,
                           PhaseChoice phases)
    : kind_(kind), params_(params), schedule_(std::move(schedule)), phases_(std::move(phases)) {
    if (std::abs(schedule_.theta(0.0)) > 1e-9)
        throw std::invalid_argument("ProtocolSpec: schedule must satisfy theta(0) = 0");
    if (std::abs(schedule_.theta(1.0) - params_.theta0) > 1e-9)
        throw std::invalid_argument("ProtocolSpec: schedule must satisfy theta(1) = theta0");
}

ProtocolSpec ProtocolSpec::adiabatic(const LZParams& params) {
    return adiabatic(params, Schedule::linear(params.theta0));
}

ProtocolSpec ProtocolSpec::adiabatic(const LZParams& params, const Schedule& schedule) {
    return ProtocolSpec(ProtocolKind::adiabatic, params, schedule, PhaseChoice::adiabatic());
}

ProtocolSpec ProtocolSpec::traditional_tqd(const LZParams& params) {
    return traditional_tqd(params, Schedule::linear(params.theta0));
}

ProtocolSpec ProtocolSpec::traditional_tqd(const LZParams& params, const Schedule& schedule) {
    return ProtocolSpec(ProtocolKind::traditional_tqd, params, schedule,
                        PhaseChoice::adiabatic());
}

ProtocolSpec ProtocolSpec::optimal_tqd(const LZParams& params) {
    return optimal_tqd(params, Schedule::linear(params.theta0));
}

ProtocolSpec ProtocolSpec::optimal_tqd(const LZParams& params, const Schedule& schedule) {
    return ProtocolSpec(ProtocolKind::optimal_tqd, params, schedule, PhaseChoice::null_phase());
}

ProtocolSpec ProtocolSpec::generalized_tqd(const LZParams& params, const PhaseChoice& phases) {
    return generalized_tqd(params, phases, Schedule::linear(params.theta0));
}

ProtocolSpec ProtocolSpec::generalized_tqd(const LZParams& params, const PhaseChoice& phases,
                                           const Schedule& schedule) {
    return ProtocolSpec(ProtocolKind::generalized_tqd, params, schedule, phases);
}

namespace {

PauliCoeffs coeffs_h0(const LZParams& p, const Schedule& sched, double s) {
    const double th = checked_theta(sched, s);
    PauliCoeffs c;
    c.x = -p.delta * std::tan(th);
    c.z = -p.delta;
    return c;
}

PauliCoeffs coeffs_cd(const LZParams& p, const Schedule& sched, double s) {
    PauliCoeffs c;
    c.y = sched.dtheta(s) / (2.0 * p.tau);
    return c;
}

PauliCoeffs coeffs_gsa(const LZParams& p, const Schedule& sched, double s,
                       const PhaseChoice& phases) {
    PauliCoeffs c = coeffs_cd(p, sched, s);
    if (phases.kind() == PhaseChoice::Kind::null_phase) return c;
    const double th = checked_theta(sched, s);
    const double sec = 1.0 / std::cos(th);
    const double e_plus = -p.delta * sec;
    const double e_minus = p.delta * sec;
    const double t = s * p.tau;
    const double theta_p = phases.value(0, t, e_plus);
    const double theta_m = phases.value(1, t, e_minus);
    // -theta_p |n+><n+| - theta_m |n-><n-| expanded over the Pauli basis:
    // |n+><n+| - |n-><n-| = sin(th) sx + cos(th) sz, |n+><n+| + |n-><n-| = I.
    const double diff = 0.5 * (theta_p - theta_m);
    const double mean = 0.5 * (theta_p + theta_m);
    c.x -= diff * std::sin(th);
    c.z -= diff * std::cos(th);
    c.id -= mean;
    return c;
}

} // namespace

PauliCoeffs ProtocolSpec::coeffs(double s) const {
    switch (kind_) {
        case ProtocolKind::adiabatic:
            return coeffs_h0(params_, schedule_, s);
        case ProtocolKind::traditional_tqd: {
            PauliCoeffs c = coeffs_h0(params_, schedule_, s);
            c.y = coeffs_cd(params_, schedule_, s).y;
            return c;
        }
        case ProtocolKind::optimal_tqd:
            return coeffs_cd(params_, schedule_, s);
        case ProtocolKind::generalized_tqd:
            return coeffs_gsa(params_, schedule_, s, phases_);
    }
    throw std::logic_error("ProtocolSpec::coeffs: unknown protocol kind");
}

const char* protocol_name(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::adiabatic: return "adiabatic";
        case ProtocolKind::traditional_tqd: return "traditional_tqd";
        case ProtocolKind::optimal_tqd: return "optimal_tqd";
        case ProtocolKind::generalized_tqd: return "generalized_tqd";
    }
    return "unknown";
}

std::optional<ProtocolKind> parse_protocol(const std::string& name) {
    if (name == "adiabatic") return ProtocolKind::adiabatic;
    if (name == "traditional_tqd") return ProtocolKind::traditional_tqd;
    if (name == "optimal_tqd") return ProtocolKind::optimal_tqd;
    if (name == "generalized_tqd") return ProtocolKind::generalized_tqd;
    return std::nullopt;
}

double rabi(const LZParams& params, const Schedule& schedule, double s) {
    return params.delta * std::tan(checked_theta(schedule, s));
}

double rabi(const LZParams& params, double s) {
    return rabi(params, Schedule::linear(params.theta0), s);
}

Operator h0(const LZParams& params, const Schedule& schedule, double s) {
    return to_operator(coeffs_h0(params, schedule, s));
}

Operator h0(const LZParams& params, double s) {
    return h0(params, Schedule::linear(params.theta0), s);
}

EigenPair eigenpair(const LZParams& params, const Schedule& schedule, double s) {
    const double th = checked_theta(schedule, s);
    const double sec = 1.0 / std::cos(th);
    const double c = std::cos(0.5 * th);
    const double sn = std::sin(0.5 * th);
    Vector plus(2), minus(2);
    plus << Complex(c, 0.0), Complex(sn, 0.0);
    minus << Complex(-sn, 0.0), Complex(c, 0.0);
    return EigenPair{-params.delta * sec, PureState(std::move(plus)), params.delta * sec,
                     PureState(std::move(minus))};
}

EigenPair eigenpair(const LZParams& params, double s) {
    return eigenpair(params, Schedule::linear(params.theta0), s);
}

double gap(const LZParams& params, const Schedule& schedule, double s) {
    return 2.0 * params.delta / std::cos(checked_theta(schedule, s));
}

double gap(const LZParams& params, double s) {
    return gap(params, Schedule::linear(params.theta0), s);
}

Operator h_cd(const LZParams& params, const Schedule& schedule, double s) {
    return to_operator(coeffs_cd(params, schedule, s));
}

Operator h_cd(const LZParams& params, double s) {
    return h_cd(params, Schedule::linear(params.theta0), s);
}

Operator h_sa(const LZParams& params, const Schedule& schedule, double s) {
    PauliCoeffs c = coeffs_h0(params, schedule, s);
    c.y = coeffs_cd(params, schedule, s).y;
    return to_operator(c);
}

Operator h_sa(const LZParams& params, double s) {
    return h_sa(params, Schedule::linear(params.theta0), s);
}

Operator h_opsa(const LZParams& params, const Schedule& schedule, double s) {
    return h_cd(params, schedule, s);
}

Operator h_opsa(const LZParams& params, double s) {
    return h_opsa(params, Schedule::linear(params.theta0), s);
}

Operator gsa_lz(const LZParams& params, const Schedule& schedule, double s,
                const PhaseChoice& phases) {
    return to_operator(coeffs_gsa(params, schedule, s, phases));
}

Operator gsa_lz(const LZParams& params, double s, const PhaseChoice& phases) {
    return gsa_lz(params, Schedule::linear(params.theta0), s, phases);
}

std::vector<Operator> gsa_general(const std::vector<Operator>& h_samples,
                                  const std::vector<double>& times,
                                  const PhaseChoice& phases) {
    const std::size_t n = h_samples.size();
    if (n < 3)
        throw std::invalid_argument("gsa_general: need at least three samples");
    if (times.size() != n)
        throw std::invalid_argument("gsa_general: times and samples must have equal length");
    const Eigen::Index dim = h_samples.front().dim();
    for (std::size_t k = 0; k < n; ++k) {
        if (h_samples[k].dim() != dim)
            throw std::invalid_argument("gsa_general: samples must share one dimension");
        if (k > 0 && !(times[k] > times[k - 1]))
            throw std::invalid_argument("gsa_general: times must be strictly increasing");
    }

    // Eigendecompose every sample; track frames by maximal overlap and smooth
    // the gauge so <n(t_{k-1})|n(t_k)> is real positive.
    std::vector<Matrix> frames(n);
    std::vector<Eigen::VectorXd> levels(n);
    for (std::size_t k = 0; k < n; ++k) {
        EigDecomposition ed = eig_herm(h_samples[k]);
        for (Eigen::Index i = 0; i + 1 < dim; ++i) {
            if (ed.values(i + 1) - ed.values(i) < 1e-9)
                throw degeneracy_error("gsa_general: spectrum is degenerate at sample " +
                                       std::to_string(k));
        }
        if (k == 0) {
            frames[0] = ed.vectors;
            levels[0] = ed.values;
            continue;
        }
        Matrix matched(dim, dim);
        Eigen::VectorXd vals(dim);
        std::vector<bool> used(static_cast<std::size_t>(dim), false);
        for (Eigen::Index prev = 0; prev < dim; ++prev) {
            Eigen::Index best = -1;
            Complex best_ov{0.0, 0.0};
            for (Eigen::Index cur = 0; cur < dim; ++cur) {
                if (used[static_cast<std::size_t>(cur)]) continue;
                const Complex ov = frames[k - 1].col(prev).dot(ed.vectors.col(cur));
                if (best < 0 || std::abs(ov) > std::abs(best_ov)) {
                    best = cur;
                    best_ov = ov;
                }
            }
            if (best < 0 || std::abs(best_ov) <= 0.9)
                throw tracking_error("gsa_general: eigenframe overlap below 0.9 at sample " +
                                     std::to_string(k) + "; sample more densely");
            used[static_cast<std::size_t>(best)] = true;
            matched.col(prev) = ed.vectors.col(best) * (std::conj(best_ov) / std::abs(best_ov));
            vals(prev) = ed.values(best);
        }
        frames[k] = std::move(matched);
        levels[k] = std::move(vals);
    }

    std::vector<Operator> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        // Three-point derivative stencil (one-sided at the ends).
        const std::size_t j0 = (k == 0) ? 0 : (k == n - 1 ? n - 3 : k - 1);
        const double x0 = times[j0], x1 = times[j0 + 1], x2 = times[j0 + 2];
        const double x = times[k];
        const double w0 = lagrange3_weight0(x, x0, x1, x2);
        const double w1 = lagrange3_weight0(x, x1, x2, x0);
        const double w2 = lagrange3_weight0(x, x2, x0, x1);
        Matrix h = Matrix::Zero(dim, dim);
        for (Eigen::Index lvl = 0; lvl < dim; ++lvl) {
            const Vector dn = w0 * frames[j0].col(lvl) + w1 * frames[j0 + 1].col(lvl) +
                              w2 * frames[j0 + 2].col(lvl);
            const double theta_n = phases.value(static_cast<int>(lvl), x, levels[k](lvl));
            h += kI * (dn * frames[k].col(lvl).adjoint());
            h -= theta_n * (frames[k].col(lvl) * frames[k].col(lvl).adjoint());
        }
        out.emplace_back(Matrix(0.5 * (h + h.adjoint())));
    }
    return out;
}

PureState target_state(const LZParams& params, const Schedule& schedule, double s) {
    return eigenpair(params, schedule, s).v_plus;
}

PureState target_state(const LZParams& params, double s) {
    return target_state(params, Schedule::linear(params.theta0), s);
}

double accumulated_phase(const ProtocolSpec& spec, double s, int level) {
    if (level != 0 && level != 1)
        throw std::invalid_argument("accumulated_phase: level must be 0 or 1");
    if (s == 0.0) return 0.0;
    const auto theta_at = [&](double xi) {
        const EigenPair pair = eigenpair(spec.params(), spec.schedule(), xi);
        const double energy = (level == 0) ? pair.e_plus : pair.e_minus;
        switch (spec.kind()) {
            case ProtocolKind::adiabatic:
            case ProtocolKind::traditional_tqd:
                return -energy;
            case ProtocolKind::optimal_tqd:
                return 0.0;
            case ProtocolKind::generalized_tqd:
                return spec.phases().value(level, xi * spec.params().tau, energy);
        }
        return 0.0;
    };
    return spec.params().tau * integrate_gl(theta_at, 0.0, s, 64);
}

} // namespace stalz
