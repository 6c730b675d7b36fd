#ifndef GEOATT_DYNAMICS_HPP
#define GEOATT_DYNAMICS_HPP

#include <optional>
#include <string>
#include <string_view>

#include "geoatt/so3.hpp"

namespace geoatt {

/// Symmetric positive definite inertia matrix [kg m^2]; the inverse and the
/// extreme eigenvalues are computed once at construction.
class InertiaMatrix {
public:
    /// Throws ConfigError when J is not symmetric within 1e-12 or not
    /// positive definite.
    explicit InertiaMatrix(const Matrix3& J);

    const Matrix3& matrix() const { return J_; }
    const Matrix3& inverse() const { return J_inv_; }
    double lambda_max() const { return lambda_max_; }
    double lambda_min() const { return lambda_min_; }

    bool operator==(const InertiaMatrix& other) const { return J_ == other.J_; }

private:
    Matrix3 J_;
    Matrix3 J_inv_;
    double lambda_max_;
    double lambda_min_;
};

struct BodyState {
    Rotation R;
    Vector3 omega = Vector3::Zero();
};

enum class DisturbanceKind {
    Identity,        // W(R, Omega) = I_3, p = 3
    ConstantMatrix,  // W(R, Omega) = fixed 3 x p matrix
};

/// Throws ConfigError for an unknown name.
DisturbanceKind parse_disturbance_kind(std::string_view name);
std::string_view to_string(DisturbanceKind kind);

/// Matched disturbance W(R, Omega) Delta with a fixed uncertain parameter
/// Delta in R^p and known bounds ||W|| <= B_W, ||Delta|| <= B_Delta.
class DisturbanceModel {
public:
    /// No disturbance: identity map with Delta = 0.
    DisturbanceModel();

    /// Bounds default to ||W|| and ||Delta||; explicit bounds must dominate them.
    static DisturbanceModel identity(const Eigen::VectorXd& delta,
                                     std::optional<double> bound_W = std::nullopt,
                                     std::optional<double> bound_delta = std::nullopt);
    static DisturbanceModel constant(const Eigen::MatrixXd& W, const Eigen::VectorXd& delta,
                                     std::optional<double> bound_W = std::nullopt,
                                     std::optional<double> bound_delta = std::nullopt);

    DisturbanceKind kind() const { return kind_; }
    const Eigen::VectorXd& delta() const { return delta_; }
    Eigen::Index dimension() const { return delta_.size(); }
    double bound_W() const { return bound_W_; }
    double bound_delta() const { return bound_delta_; }
    /// The configured matrix for ConstantMatrix; identity otherwise.
    const Eigen::MatrixXd& constant_matrix() const { return W_; }

    Eigen::MatrixXd W(const Matrix3& R, const Vector3& omega) const;

    bool operator==(const DisturbanceModel& other) const;

private:
    DisturbanceModel(DisturbanceKind kind, Eigen::MatrixXd W, Eigen::VectorXd delta,
                     std::optional<double> bound_W, std::optional<double> bound_delta);

    DisturbanceKind kind_;
    Eigen::MatrixXd W_;
    Eigen::VectorXd delta_;
    double bound_W_;
    double bound_delta_;
};

struct StateDerivative {
    Matrix3 R_dot;
    Vector3 omega_dot;
};

/// R_dot = R Omega^ and Omega_dot = J^-1 (u + W Delta - Omega x J Omega).
/// R may be an integrator stage value off the group.
StateDerivative state_derivative(const Matrix3& R, const Vector3& omega, const Vector3& u,
                                 const DisturbanceModel& disturbance, const InertiaMatrix& J);

inline StateDerivative state_derivative(const BodyState& s, const Vector3& u,
                                        const DisturbanceModel& disturbance,
                                        const InertiaMatrix& J)
{
    return state_derivative(s.R.matrix(), s.omega, u, disturbance, J);
}

/// 1/2 Omega . J Omega.
double kinetic_energy(const Vector3& omega, const InertiaMatrix& J);

} // namespace geoatt

#endif // GEOATT_DYNAMICS_HPP
