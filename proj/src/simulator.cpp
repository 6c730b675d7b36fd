#include "geoatt/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "geoatt/bounds.hpp"
#include "geoatt/errors.hpp"

namespace geoatt {

ControllerMode parse_controller_mode(std::string_view name)
{
    if (name == "smooth") {
        return ControllerMode::Smooth;
    }
    if (name == "adaptive") {
        return ControllerMode::Adaptive;
    }
    if (name == "adaptive-off") {
        return ControllerMode::AdaptiveFrozen;
    }
    if (name == "passive") {
        return ControllerMode::Passive;
    }
    throw ConfigError("unknown controller mode '" + std::string(name) +
                      "' (expected smooth, adaptive, adaptive-off or passive)");
}

std::string_view to_string(ControllerMode mode)
{
    switch (mode) {
    case ControllerMode::Smooth:
        return "smooth";
    case ControllerMode::Adaptive:
        return "adaptive";
    case ControllerMode::AdaptiveFrozen:
        return "adaptive-off";
    case ControllerMode::Passive:
        return "passive";
    }
    throw ConfigError("unknown controller mode");
}

void ScenarioConfig::validate() const
{
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ConfigError("dt must be positive");
    }
    if (!(t_final > dt) || !std::isfinite(t_final)) {
        throw ConfigError("t_final must exceed dt");
    }
    if (estimate0.size() != 0 && estimate0.size() != disturbance.dimension()) {
        throw ConfigError("initial estimate dimension does not match the disturbance dimension");
    }
    if (log_decimation == 0) {
        throw ConfigError("log decimation must be at least 1");
    }
    if (!(convergence.attitude > 0.0) || !(convergence.rate > 0.0) ||
        !(convergence.window >= 0.0)) {
        throw ConfigError("convergence tolerances must be positive");
    }
}

Eigen::VectorXd ScenarioConfig::initial_estimate() const
{
    if (estimate0.size() == 0) {
        return Eigen::VectorXd::Zero(disturbance.dimension());
    }
    return estimate0;
}

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b)
{
    const auto same_vec = [](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
        return x.size() == y.size() && x == y;
    };
    return a.inertia == b.inertia && a.G == b.G && a.gains == b.gains && a.sensor == b.sensor &&
           a.constraints == b.constraints && a.R0 == b.R0 && a.omega0 == b.omega0 &&
           a.Rd == b.Rd && a.disturbance == b.disturbance && same_vec(a.estimate0, b.estimate0) &&
           a.mode == b.mode && a.dt == b.dt && a.t_final == b.t_final &&
           a.convergence == b.convergence && a.stop_on_convergence == b.stop_on_convergence &&
           a.log_decimation == b.log_decimation;
}

void check_feasibility(const ScenarioConfig& cfg)
{
    const auto check = [&](const Rotation& R, const char* name) {
        for (std::size_t i = 0; i < cfg.constraints.size(); ++i) {
            const double x = constraint_cosine(R, cfg.sensor, cfg.constraints[i]);
            if (!(x < cfg.constraints[i].cos_theta())) {
                throw FeasibilityError(name, i, x, cfg.constraints[i].cos_theta());
            }
        }
    };
    check(cfg.R0, "initial attitude R0");
    check(cfg.Rd, "desired attitude Rd");
}

Vector3 control_torque(const ErrorFunctionOutput& err, const Vector3& omega,
                       const Eigen::VectorXd& estimate, const ScenarioConfig& cfg,
                       const Matrix3& R)
{
    switch (cfg.mode) {
    case ControllerMode::Smooth:
        return control_smooth(err, omega, cfg.gains, cfg.inertia);
    case ControllerMode::Adaptive:
    case ControllerMode::AdaptiveFrozen:
        return control_adaptive(err, omega, cfg.gains, cfg.inertia, cfg.disturbance.W(R, omega),
                                AdaptiveState{estimate});
    case ControllerMode::Passive:
        return Vector3::Zero();
    }
    throw ConfigError("unknown controller mode");
}

double lyapunov_value(const ErrorFunctionOutput& err, const Vector3& omega,
                      const Eigen::VectorXd& estimate, const ScenarioConfig& cfg)
{
    switch (cfg.mode) {
    case ControllerMode::Smooth:
    case ControllerMode::Passive:
        return lyapunov_smooth(err, omega, cfg.inertia, cfg.gains.k_R());
    case ControllerMode::Adaptive:
    case ControllerMode::AdaptiveFrozen:
        return lyapunov_adaptive(err, omega, cfg.inertia, cfg.gains,
                                 cfg.disturbance.delta() - estimate);
    }
    throw ConfigError("unknown controller mode");
}

namespace {

struct Derivative {
    Matrix3 R_dot;
    Vector3 omega_dot;
    Eigen::VectorXd estimate_dot;
};

ErrorFunctionOutput evaluate_at(const Matrix3& R, const ScenarioConfig& cfg, double t)
{
    try {
        return evaluate_error(R, cfg.Rd, cfg.G, cfg.sensor, cfg.constraints);
    } catch (const ConstraintViolated& e) {
        throw ConstraintViolated(e.index(), e.cosine(), e.limit(), t);
    }
}

Derivative closed_loop(const Matrix3& R, const Vector3& omega, const Eigen::VectorXd& estimate,
                       const ScenarioConfig& cfg, double t)
{
    if (!R.allFinite() || !omega.allFinite() || !estimate.allFinite()) {
        throw NumericalDivergence(t, "non-finite integrator stage");
    }
    const ErrorFunctionOutput err = evaluate_at(R, cfg, t);
    const Vector3 u = control_torque(err, omega, estimate, cfg, R);
    const StateDerivative sd = state_derivative(R, omega, u, cfg.disturbance, cfg.inertia);
    Derivative d{sd.R_dot, sd.omega_dot, Eigen::VectorXd::Zero(estimate.size())};
    if (cfg.mode == ControllerMode::Adaptive) {
        d.estimate_dot = adaptive_rate(err, omega, cfg.gains, cfg.disturbance.W(R, omega));
    }
    return d;
}

} // namespace

StepResult step(const BodyState& state, const AdaptiveState& adaptive, const ScenarioConfig& cfg,
                double t)
{
    const double h = cfg.dt;
    const Matrix3& R = state.R.matrix();
    const Vector3& w = state.omega;
    const Eigen::VectorXd& e = adaptive.estimate;

    const Derivative k1 = closed_loop(R, w, e, cfg, t);
    const Derivative k2 = closed_loop(R + 0.5 * h * k1.R_dot, w + 0.5 * h * k1.omega_dot,
                                      e + 0.5 * h * k1.estimate_dot, cfg, t + 0.5 * h);
    const Derivative k3 = closed_loop(R + 0.5 * h * k2.R_dot, w + 0.5 * h * k2.omega_dot,
                                      e + 0.5 * h * k2.estimate_dot, cfg, t + 0.5 * h);
    const Derivative k4 = closed_loop(R + h * k3.R_dot, w + h * k3.omega_dot,
                                      e + h * k3.estimate_dot, cfg, t + h);

    const Matrix3 R_next = R + (h / 6.0) * (k1.R_dot + 2.0 * k2.R_dot + 2.0 * k3.R_dot + k4.R_dot);
    const Vector3 w_next =
        w + (h / 6.0) * (k1.omega_dot + 2.0 * k2.omega_dot + 2.0 * k3.omega_dot + k4.omega_dot);
    const Eigen::VectorXd e_next =
        e + (h / 6.0) * (k1.estimate_dot + 2.0 * k2.estimate_dot + 2.0 * k3.estimate_dot +
                         k4.estimate_dot);

    if (!R_next.allFinite() || !w_next.allFinite() || !e_next.allFinite()) {
        throw NumericalDivergence(t + h, "non-finite state after integration step");
    }
    StepResult out;
    try {
        out.state.R = project_to_so3(R_next);
    } catch (const ProjectionFailed& ex) {
        throw NumericalDivergence(t + h, ex.what());
    }
    out.state.omega = w_next;
    out.adaptive.estimate = e_next;
    return out;
}

TrajectorySample sample_state(const BodyState& state, const AdaptiveState& adaptive,
                              const ScenarioConfig& cfg, double t)
{
    const Matrix3& R = state.R.matrix();
    const ErrorFunctionOutput err = evaluate_at(R, cfg, t);

    TrajectorySample s;
    s.t = t;
    s.R = R;
    s.omega = state.omega;
    s.u = control_torque(err, state.omega, adaptive.estimate, cfg, R);
    s.psi = err.psi;
    s.e_R = err.e_R;
    s.e_RA = err.e_RA;
    s.e_RB = err.e_RB;
    s.estimate = adaptive.estimate;
    s.V = lyapunov_value(err, state.omega, adaptive.estimate, cfg);
    s.constraint_angles.reserve(cfg.constraints.size());
    for (const ConstraintSpec& cs : cfg.constraints) {
        s.constraint_angles.push_back(
            std::acos(std::clamp(constraint_cosine(R, cfg.sensor, cs), -1.0, 1.0)));
    }
    return s;
}

SimulationResult run(const ScenarioConfig& cfg)
{
    cfg.validate();
    check_feasibility(cfg);

    const auto n_steps = static_cast<std::size_t>(std::llround(cfg.t_final / cfg.dt));
    const double window_tol = 1e-9 * cfg.dt;

    SimulationResult result;
    result.min_margin = std::numeric_limits<double>::infinity();
    result.log.samples.reserve(n_steps / cfg.log_decimation + 2);

    BodyState state{cfg.R0, cfg.omega0};
    AdaptiveState adaptive{cfg.initial_estimate()};
    std::optional<double> window_start;

    for (std::size_t k = 0;; ++k) {
        const double t = static_cast<double>(k) * cfg.dt;
        TrajectorySample s = sample_state(state, adaptive, cfg, t);

        for (const ConstraintSpec& cs : cfg.constraints) {
            result.min_margin =
                std::min(result.min_margin, cs.cos_theta() - constraint_cosine(s.R, cfg.sensor, cs));
        }
        result.max_orthogonality_error =
            std::max(result.max_orthogonality_error, orthogonality_error(s.R));

        bool stop = (k == n_steps);
        if (s.e_R.norm() < cfg.convergence.attitude && s.omega.norm() < cfg.convergence.rate) {
            if (!window_start) {
                window_start = t;
            }
            if (t - *window_start >= cfg.convergence.window - window_tol) {
                if (!result.converged) {
                    result.converged = true;
                    result.convergence_time = window_start;
                }
                stop = stop || cfg.stop_on_convergence;
            }
        } else {
            window_start.reset();
            result.converged = false;
            result.convergence_time.reset();
        }

        result.final_psi = s.psi;
        result.final_time = t;
        if (stop || k % cfg.log_decimation == 0) {
            result.log.samples.push_back(std::move(s));
        }
        if (stop) {
            break;
        }
        StepResult next = step(state, adaptive, cfg, t);
        state = std::move(next.state);
        adaptive = std::move(next.adaptive);
        ++result.steps;
    }
    if (cfg.constraints.empty()) {
        result.min_margin = std::numeric_limits<double>::infinity();
    }
    result.final_state = state;
    result.final_estimate = adaptive;
    return result;
}

GainCertificate scenario_certificate(const ScenarioConfig& cfg, double psi_fraction,
                                     double beta_fraction)
{
    const GainConstants k = gain_constants(cfg.G);
    const double psi = psi_fraction * k.h1;
    // Without constraints B = 1 and only the attractive term remains.
    double H = attraction_rate_bound(cfg.G);
    for (const ConstraintSpec& cs : cfg.constraints) {
        const double beta =
            cs.cos_theta() > 0.0 ? beta_fraction * cs.cos_theta() : cs.cos_theta() - 0.1;
        H = std::max(H, make_domain_bounds(psi, beta, cfg.G, cs).H);
    }
    return certify_gains(cfg.gains, cfg.inertia.lambda_max(), H);
}

} // namespace geoatt
