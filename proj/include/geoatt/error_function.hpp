#ifndef GEOATT_ERROR_FUNCTION_HPP
#define GEOATT_ERROR_FUNCTION_HPP

#include <span>

#include "geoatt/so3.hpp"

namespace geoatt {

/// Diagonal weight matrix G = diag(g1, g2, g3) of the attractive potential.
/// The entries must be positive and pairwise distinct.
class GainMatrix {
public:
    explicit GainMatrix(const Vector3& diagonal);
    GainMatrix(double g1, double g2, double g3) : GainMatrix(Vector3(g1, g2, g3)) {}

    const Vector3& diagonal() const { return g_; }
    Matrix3 matrix() const { return g_.asDiagonal(); }
    double trace() const { return g_.sum(); }

    bool operator==(const GainMatrix& other) const { return g_ == other.g_; }

private:
    Vector3 g_;
};

/// Exclusion cone r^T R^T v <= cos(theta) around the inertial direction v,
/// with logarithmic barrier shape alpha.
class ConstraintSpec {
public:
    /// Requires 0 <= theta <= pi/2 and alpha > 0; throws DomainError otherwise.
    ConstraintSpec(const UnitVector3& direction, double theta, double alpha);

    const UnitVector3& direction() const { return v_; }
    double theta() const { return theta_; }
    double alpha() const { return alpha_; }
    double cos_theta() const { return cos_theta_; }

    bool operator==(const ConstraintSpec& other) const
    {
        return v_ == other.v_ && theta_ == other.theta_ && alpha_ == other.alpha_;
    }

private:
    UnitVector3 v_;
    double theta_;
    double alpha_;
    double cos_theta_;
};

/// Body-fixed sensor pointing direction r.
using SensorAxis = UnitVector3;

/// Value and gradients of the barrier-augmented error function at one
/// attitude. For several constraints `barrier` is the composite factor
/// 1 + sum_i (B_i - 1) and `e_RB` the sum of the individual barrier gradients.
struct ErrorFunctionOutput {
    double psi = 0.0;
    double attraction = 0.0;
    double barrier = 1.0;
    Vector3 e_R = Vector3::Zero();
    Vector3 e_RA = Vector3::Zero();
    Vector3 e_RB = Vector3::Zero();
};

// The functions below take the attitude as a plain Matrix3 so that they can be
// evaluated at integrator stage values slightly off the group. Every Rotation
// converts implicitly.

/// r^T R^T v, the cosine of the angle between the sensor and the avoid direction.
double constraint_cosine(const Matrix3& R, const SensorAxis& r, const ConstraintSpec& cs);

/// A(R) = 1/2 tr[G (I - R_d^T R)].
double attraction(const Matrix3& R, const Matrix3& Rd, const GainMatrix& G);

/// B(R) = 1 - (1/alpha) ln((cos(theta) - r^T R^T v) / (1 + cos(theta))).
/// Throws ConstraintViolated when the attitude is on or beyond the boundary.
double barrier(const Matrix3& R, const SensorAxis& r, const ConstraintSpec& cs);

/// e_RA = 1/2 (G R_d^T R - R^T R_d G)^vee, so that dA = eta . e_RA for dR = R eta^.
Vector3 attraction_gradient(const Matrix3& R, const Matrix3& Rd, const GainMatrix& G);

/// e_RB = ((R^T v) x r) / (alpha (r^T R^T v - cos(theta))), so that
/// dB = eta . e_RB for dR = R eta^.
Vector3 barrier_gradient(const Matrix3& R, const SensorAxis& r, const ConstraintSpec& cs);

/// Psi = A B and e_R = e_RA B + A e_RB for a single constraint.
ErrorFunctionOutput evaluate_error(const Matrix3& R, const Matrix3& Rd, const GainMatrix& G,
                                   const SensorAxis& r, const ConstraintSpec& cs);

/// Psi = A (1 + sum_i (B_i - 1)) and
/// e_R = e_RA (1 + sum_i (B_i - 1)) + A sum_i e_RB,i.
/// One constraint reproduces the single-constraint result exactly; an empty
/// list gives the unconstrained attractive potential. ConstraintViolated
/// carries the index of the offending constraint.
ErrorFunctionOutput evaluate_error(const Matrix3& R, const Matrix3& Rd, const GainMatrix& G,
                                   const SensorAxis& r, std::span<const ConstraintSpec> constraints);

/// E(R, R_d) = 1/2 (tr[R^T R_d G] I - R^T R_d G); d/dt e_RA = E Omega.
Matrix3 attraction_rate_matrix(const Matrix3& R, const Matrix3& Rd, const GainMatrix& G);

/// F(R); d/dt e_RB = F Omega.
Matrix3 barrier_rate_matrix(const Matrix3& R, const SensorAxis& r, const ConstraintSpec& cs);

} // namespace geoatt

#endif // GEOATT_ERROR_FUNCTION_HPP
