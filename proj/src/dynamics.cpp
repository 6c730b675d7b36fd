#include "geoatt/dynamics.hpp"

#include <sstream>

#include "geoatt/errors.hpp"

namespace geoatt {

InertiaMatrix::InertiaMatrix(const Matrix3& J) : J_(J)
{
    if (!J.allFinite()) {
        throw ConfigError("inertia matrix has non-finite entries");
    }
    if ((J - J.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw ConfigError("inertia matrix is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Matrix3> eig(J, Eigen::EigenvaluesOnly);
    lambda_min_ = eig.eigenvalues()(0);
    lambda_max_ = eig.eigenvalues()(2);
    if (!(lambda_min_ > 0.0)) {
        std::ostringstream os;
        os << "inertia matrix is not positive definite (min eigenvalue " << lambda_min_ << ")";
        throw ConfigError(os.str());
    }
    J_inv_ = J.inverse();
}

DisturbanceKind parse_disturbance_kind(std::string_view name)
{
    if (name == "identity") {
        return DisturbanceKind::Identity;
    }
    if (name == "constant") {
        return DisturbanceKind::ConstantMatrix;
    }
    throw ConfigError("unknown disturbance kind '" + std::string(name) +
                      "' (expected identity or constant)");
}

std::string_view to_string(DisturbanceKind kind)
{
    switch (kind) {
    case DisturbanceKind::Identity:
        return "identity";
    case DisturbanceKind::ConstantMatrix:
        return "constant";
    }
    throw ConfigError("unknown disturbance kind");
}

DisturbanceModel::DisturbanceModel()
    : DisturbanceModel(DisturbanceKind::Identity, Eigen::MatrixXd::Identity(3, 3),
                       Eigen::VectorXd::Zero(3), std::nullopt, std::nullopt)
{
}

DisturbanceModel::DisturbanceModel(DisturbanceKind kind, Eigen::MatrixXd W, Eigen::VectorXd delta,
                                   std::optional<double> bound_W,
                                   std::optional<double> bound_delta)
    : kind_(kind), W_(std::move(W)), delta_(std::move(delta))
{
    if (W_.rows() != 3 || W_.cols() != delta_.size() || delta_.size() == 0) {
        std::ostringstream os;
        os << "disturbance map is " << W_.rows() << "x" << W_.cols()
           << " but Delta has dimension " << delta_.size();
        throw ConfigError(os.str());
    }
    if (!W_.allFinite() || !delta_.allFinite()) {
        throw ConfigError("disturbance model has non-finite entries");
    }
    const double w_norm = Eigen::JacobiSVD<Eigen::MatrixXd>(W_).singularValues()(0);
    const double d_norm = delta_.norm();
    bound_W_ = bound_W.value_or(w_norm);
    bound_delta_ = bound_delta.value_or(d_norm);
    if (w_norm > bound_W_) {
        throw ConfigError("||W|| exceeds the stated bound B_W");
    }
    if (d_norm > bound_delta_) {
        throw ConfigError("||Delta|| exceeds the stated bound B_Delta");
    }
}

DisturbanceModel DisturbanceModel::identity(const Eigen::VectorXd& delta,
                                            std::optional<double> bound_W,
                                            std::optional<double> bound_delta)
{
    if (delta.size() != 3) {
        throw ConfigError("identity disturbance map requires Delta of dimension 3");
    }
    return DisturbanceModel(DisturbanceKind::Identity, Eigen::MatrixXd::Identity(3, 3), delta,
                            bound_W, bound_delta);
}

DisturbanceModel DisturbanceModel::constant(const Eigen::MatrixXd& W,
                                            const Eigen::VectorXd& delta,
                                            std::optional<double> bound_W,
                                            std::optional<double> bound_delta)
{
    return DisturbanceModel(DisturbanceKind::ConstantMatrix, W, delta, bound_W, bound_delta);
}

Eigen::MatrixXd DisturbanceModel::W(const Matrix3& /*R*/, const Vector3& /*omega*/) const
{
    switch (kind_) {
    case DisturbanceKind::Identity:
        return Eigen::MatrixXd::Identity(3, 3);
    case DisturbanceKind::ConstantMatrix:
        return W_;
    }
    throw ConfigError("unknown disturbance kind");
}

bool DisturbanceModel::operator==(const DisturbanceModel& other) const
{
    return kind_ == other.kind_ && W_.rows() == other.W_.rows() && W_.cols() == other.W_.cols() &&
           W_ == other.W_ && delta_.size() == other.delta_.size() && delta_ == other.delta_ &&
           bound_W_ == other.bound_W_ && bound_delta_ == other.bound_delta_;
}

StateDerivative state_derivative(const Matrix3& R, const Vector3& omega, const Vector3& u,
                                 const DisturbanceModel& disturbance, const InertiaMatrix& J)
{
    const Vector3 Jw = J.matrix() * omega;
    const Vector3 torque = u + disturbance.W(R, omega) * disturbance.delta() - omega.cross(Jw);
    return {R * hat(omega).matrix(), J.inverse() * torque};
}

double kinetic_energy(const Vector3& omega, const InertiaMatrix& J)
{
    return 0.5 * omega.dot(J.matrix() * omega);
}

} // namespace geoatt
