#ifndef GEOATT_CONTROLLER_HPP
#define GEOATT_CONTROLLER_HPP

#include "geoatt/dynamics.hpp"
#include "geoatt/error_function.hpp"

namespace geoatt {

/// Positive controller constants k_R, k_Omega, k_Delta and the cross gain c.
class ControllerGains {
public:
    /// Throws ConfigError unless every gain is positive and finite.
    ControllerGains(double k_R, double k_Omega, double k_Delta, double c);

    /// As above, and additionally requires c < c_max(k_R, k_Omega, lambda_M, H).
    static ControllerGains certified(double k_R, double k_Omega, double k_Delta, double c,
                                     double lambda_M, double H);

    double k_R() const { return k_R_; }
    double k_Omega() const { return k_Omega_; }
    double k_Delta() const { return k_Delta_; }
    double c() const { return c_; }

    bool operator==(const ControllerGains&) const = default;

private:
    double k_R_;
    double k_Omega_;
    double k_Delta_;
    double c_;
};

/// Outcome of checking c against its Lyapunov limit for a given H.
struct GainCertificate {
    double H;
    double lambda_M;
    double c_max;
    bool certified;  // 0 < c < c_max
};

GainCertificate certify_gains(const ControllerGains& gains, double lambda_M, double H);

/// Disturbance estimate Delta_bar, integrated alongside the body state.
struct AdaptiveState {
    Eigen::VectorXd estimate = Eigen::VectorXd::Zero(3);
};

/// u = -k_R e_R - k_Omega Omega + Omega x J Omega.
Vector3 control_smooth(const ErrorFunctionOutput& err, const Vector3& omega,
                       const ControllerGains& gains, const InertiaMatrix& J);

/// u = -k_R e_R - k_Omega Omega + Omega x J Omega - W Delta_bar.
/// Throws ConfigError when W and Delta_bar disagree in dimension.
Vector3 control_adaptive(const ErrorFunctionOutput& err, const Vector3& omega,
                         const ControllerGains& gains, const InertiaMatrix& J,
                         const Eigen::MatrixXd& W, const AdaptiveState& adaptive);

/// d/dt Delta_bar = k_Delta W^T (Omega + c e_R).
Eigen::VectorXd adaptive_rate(const ErrorFunctionOutput& err, const Vector3& omega,
                              const ControllerGains& gains, const Eigen::MatrixXd& W);

/// V = 1/2 Omega . J Omega + k_R Psi.
double lyapunov_smooth(const ErrorFunctionOutput& err, const Vector3& omega,
                       const InertiaMatrix& J, double k_R);

/// V = 1/2 Omega . J Omega + k_R Psi + c J Omega . e_R + 1/(2 k_Delta) e_Delta . e_Delta,
/// where e_Delta = Delta - Delta_bar.
double lyapunov_adaptive(const ErrorFunctionOutput& err, const Vector3& omega,
                         const InertiaMatrix& J, const ControllerGains& gains,
                         const Eigen::VectorXd& e_delta);

/// M = [[k_R c, k_Omega c / 2], [k_Omega c / 2, k_Omega - c lambda_M H]];
/// dV/dt <= -zeta^T M zeta with zeta = (||e_R||, ||Omega||) on the domain of H.
Eigen::Matrix2d lyapunov_decay_matrix(const ControllerGains& gains, double lambda_M, double H);

} // namespace geoatt

#endif // GEOATT_CONTROLLER_HPP
