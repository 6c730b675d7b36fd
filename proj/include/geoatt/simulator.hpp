#ifndef GEOATT_SIMULATOR_HPP
#define GEOATT_SIMULATOR_HPP

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "geoatt/controller.hpp"
#include "geoatt/dynamics.hpp"
#include "geoatt/error_function.hpp"

namespace geoatt {

enum class ControllerMode {
    Smooth,         // no disturbance estimate
    Adaptive,       // estimate integrated with the update law
    AdaptiveFrozen, // adaptive control law with the update law switched off
    Passive,        // zero torque; free rotation diagnostics
};

/// Names: smooth, adaptive, adaptive-off, passive. Throws ConfigError otherwise.
ControllerMode parse_controller_mode(std::string_view name);
std::string_view to_string(ControllerMode mode);

/// A run is converged once ||e_R|| < attitude and ||Omega|| < rate have held
/// continuously for `window` seconds.
struct ConvergenceCriteria {
    double attitude = 1e-3;
    double rate = 1e-3;
    double window = 1.0;

    bool operator==(const ConvergenceCriteria&) const = default;
};

struct ScenarioConfig {
    InertiaMatrix inertia;
    GainMatrix G;
    ControllerGains gains;
    SensorAxis sensor;
    std::vector<ConstraintSpec> constraints;
    Rotation R0;
    Vector3 omega0 = Vector3::Zero();
    Rotation Rd;
    DisturbanceModel disturbance;
    /// Initial disturbance estimate; empty means zero of the disturbance dimension.
    Eigen::VectorXd estimate0;
    ControllerMode mode = ControllerMode::Adaptive;
    double dt = 1e-3;
    double t_final = 30.0;
    ConvergenceCriteria convergence;
    bool stop_on_convergence = true;
    /// Record every n-th integrator step (the first and last are always kept).
    std::size_t log_decimation = 1;

    /// Throws ConfigError for inconsistent settings (step sizes, dimensions).
    void validate() const;
    Eigen::VectorXd initial_estimate() const;
};

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b);

struct TrajectorySample {
    double t = 0.0;
    Matrix3 R = Matrix3::Identity();
    Vector3 omega = Vector3::Zero();
    Vector3 u = Vector3::Zero();
    double psi = 0.0;
    Vector3 e_R = Vector3::Zero();
    Vector3 e_RA = Vector3::Zero();
    Vector3 e_RB = Vector3::Zero();
    Eigen::VectorXd estimate;
    double V = 0.0;
    /// arccos(r^T R^T v_i) per constraint, radians.
    std::vector<double> constraint_angles;
};

struct TrajectoryLog {
    std::vector<TrajectorySample> samples;
};

struct SimulationResult {
    TrajectoryLog log;
    bool converged = false;
    /// Start of the window over which the convergence test held.
    std::optional<double> convergence_time;
    /// min over steps and constraints of cos(theta_i) - r^T R^T v_i.
    double min_margin = 0.0;
    double final_psi = 0.0;
    double final_time = 0.0;
    double max_orthogonality_error = 0.0;
    BodyState final_state;
    AdaptiveState final_estimate;
    std::size_t steps = 0;
};

/// Throws FeasibilityError when R0 or Rd violates a constraint.
void check_feasibility(const ScenarioConfig& cfg);

struct StepResult {
    BodyState state;
    AdaptiveState adaptive;
};

/// One classic fourth-order Runge-Kutta step of (R, Omega, Delta_bar) with
/// R_dot = R Omega^ at every stage and control recomputed per stage, followed
/// by projection of R onto SO(3). Stage attitudes are checked against every
/// constraint; a violation throws ConstraintViolated stamped with the stage
/// time. Non-finite results throw NumericalDivergence.
StepResult step(const BodyState& state, const AdaptiveState& adaptive, const ScenarioConfig& cfg,
                double t);

/// Integrates to t_final, or until converged when stop_on_convergence is set.
SimulationResult run(const ScenarioConfig& cfg);

/// Evaluated closed-loop quantities at one state; what the log records.
TrajectorySample sample_state(const BodyState& state, const AdaptiveState& adaptive,
                              const ScenarioConfig& cfg, double t);

/// Control torque applied by the configured mode.
Vector3 control_torque(const ErrorFunctionOutput& err, const Vector3& omega,
                       const Eigen::VectorXd& estimate, const ScenarioConfig& cfg,
                       const Matrix3& R);

/// Lyapunov function matching the configured mode.
double lyapunov_value(const ErrorFunctionOutput& err, const Vector3& omega,
                      const Eigen::VectorXd& estimate, const ScenarioConfig& cfg);

/// Gain certificate for the scenario: H is the largest single-constraint bound
/// over the constraint list on the domain psi = psi_fraction h1,
/// beta = beta_fraction cos(theta) (cos(theta) - 0.1 when cos(theta) <= 0).
GainCertificate scenario_certificate(const ScenarioConfig& cfg, double psi_fraction = 0.9,
                                     double beta_fraction = 0.9);

} // namespace geoatt

#endif // GEOATT_SIMULATOR_HPP
