#include "geoatt/controller.hpp"

#include <cmath>
#include <sstream>

#include "geoatt/bounds.hpp"
#include "geoatt/errors.hpp"

namespace geoatt {

ControllerGains::ControllerGains(double k_R, double k_Omega, double k_Delta, double c)
    : k_R_(k_R), k_Omega_(k_Omega), k_Delta_(k_Delta), c_(c)
{
    for (double g : {k_R, k_Omega, k_Delta, c}) {
        if (!(g > 0.0) || !std::isfinite(g)) {
            throw ConfigError("controller gains k_R, k_Omega, k_Delta, c must be positive");
        }
    }
}

ControllerGains ControllerGains::certified(double k_R, double k_Omega, double k_Delta, double c,
                                           double lambda_M, double H)
{
    ControllerGains gains(k_R, k_Omega, k_Delta, c);
    const GainCertificate cert = certify_gains(gains, lambda_M, H);
    if (!cert.certified) {
        std::ostringstream os;
        os << "cross gain c = " << c << " violates c < c_max = " << cert.c_max << " (H = " << H
           << ")";
        throw ConfigError(os.str());
    }
    return gains;
}

GainCertificate certify_gains(const ControllerGains& gains, double lambda_M, double H)
{
    const double limit = c_max(gains.k_R(), gains.k_Omega(), lambda_M, H);
    return {H, lambda_M, limit, gains.c() > 0.0 && gains.c() < limit};
}

Vector3 control_smooth(const ErrorFunctionOutput& err, const Vector3& omega,
                       const ControllerGains& gains, const InertiaMatrix& J)
{
    return -gains.k_R() * err.e_R - gains.k_Omega() * omega + omega.cross(J.matrix() * omega);
}

Vector3 control_adaptive(const ErrorFunctionOutput& err, const Vector3& omega,
                         const ControllerGains& gains, const InertiaMatrix& J,
                         const Eigen::MatrixXd& W, const AdaptiveState& adaptive)
{
    if (W.rows() != 3 || W.cols() != adaptive.estimate.size()) {
        std::ostringstream os;
        os << "W is " << W.rows() << "x" << W.cols() << " but the estimate has dimension "
           << adaptive.estimate.size();
        throw ConfigError(os.str());
    }
    return control_smooth(err, omega, gains, J) - W * adaptive.estimate;
}

Eigen::VectorXd adaptive_rate(const ErrorFunctionOutput& err, const Vector3& omega,
                              const ControllerGains& gains, const Eigen::MatrixXd& W)
{
    if (W.rows() != 3) {
        throw ConfigError("W must have three rows");
    }
    return gains.k_Delta() * (W.transpose() * (omega + gains.c() * err.e_R));
}

double lyapunov_smooth(const ErrorFunctionOutput& err, const Vector3& omega,
                       const InertiaMatrix& J, double k_R)
{
    return 0.5 * omega.dot(J.matrix() * omega) + k_R * err.psi;
}

double lyapunov_adaptive(const ErrorFunctionOutput& err, const Vector3& omega,
                         const InertiaMatrix& J, const ControllerGains& gains,
                         const Eigen::VectorXd& e_delta)
{
    const Vector3 Jw = J.matrix() * omega;
    return 0.5 * omega.dot(Jw) + gains.k_R() * err.psi + gains.c() * Jw.dot(err.e_R) +
           e_delta.squaredNorm() / (2.0 * gains.k_Delta());
}

Eigen::Matrix2d lyapunov_decay_matrix(const ControllerGains& gains, double lambda_M, double H)
{
    const double c = gains.c();
    const double off = 0.5 * gains.k_Omega() * c;
    Eigen::Matrix2d M;
    M << gains.k_R() * c, off,
         off, gains.k_Omega() - c * lambda_M * H;
    return M;
}

} // namespace geoatt
