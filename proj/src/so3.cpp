#include "geoatt/so3.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "geoatt/errors.hpp"

namespace geoatt {

namespace {

double skew_defect(const Matrix3& M)
{
    return (M + M.transpose()).cwiseAbs().maxCoeff();
}

} // namespace

SkewMatrix3::SkewMatrix3(const Matrix3& M) : m_(M)
{
    if (!M.allFinite() || skew_defect(M) > tolerance::kSkew) {
        std::ostringstream os;
        os << "matrix is not skew-symmetric (max |M + M^T| = " << skew_defect(M) << ")";
        throw InvalidSkew(os.str());
    }
}

Rotation::Rotation(const Matrix3& M) : m_(M)
{
    const double orth = orthogonality_error(M);
    const double det = M.determinant();
    if (!M.allFinite() || orth > tolerance::kRotation ||
        std::abs(det - 1.0) > tolerance::kRotation) {
        std::ostringstream os;
        os << "matrix is not a rotation (||R^T R - I||_F = " << orth << ", det = " << det << ")";
        throw InvalidRotation(os.str());
    }
}

Rotation Rotation::operator*(const Rotation& other) const
{
    return Rotation(m_ * other.m_, Trusted{});
}

Rotation Rotation::transpose() const
{
    return Rotation(m_.transpose(), Trusted{});
}

UnitVector3::UnitVector3(const Vector3& v) : v_(v)
{
    if (!v.allFinite() || std::abs(v.norm() - 1.0) > tolerance::kUnit) {
        std::ostringstream os;
        os << "vector is not unit length (norm = " << v.norm() << ")";
        throw DomainError(os.str());
    }
}

UnitVector3 UnitVector3::normalized(const Vector3& v)
{
    const double n = v.norm();
    if (!v.allFinite() || n == 0.0) {
        throw DomainError("cannot normalize a zero or non-finite vector");
    }
    if (std::abs(n - 1.0) <= tolerance::kUnit) {
        return UnitVector3(v);
    }
    return UnitVector3(v / n);
}

SkewMatrix3 hat(const Vector3& x)
{
    Matrix3 M;
    M << 0.0, -x.z(), x.y(),
         x.z(), 0.0, -x.x(),
         -x.y(), x.x(), 0.0;
    return SkewMatrix3(M, SkewMatrix3::Trusted{});
}

Vector3 vee(const Matrix3& M)
{
    const SkewMatrix3 checked(M);
    return {M(2, 1), M(0, 2), M(1, 0)};
}

Rotation exp_so3(const Vector3& x)
{
    const double angle = x.norm();
    const Matrix3 K = hat(x);
    const Matrix3 K2 = K * K;
    Matrix3 R;
    if (angle < tolerance::kSmallAngle) {
        // Taylor terms through second order; the next terms are below 1e-18.
        R = Matrix3::Identity() + K + 0.5 * K2;
    } else {
        const double s = std::sin(angle) / angle;
        const double half = std::sin(0.5 * angle) / angle;
        R = Matrix3::Identity() + s * K + 2.0 * half * half * K2;
    }
    return Rotation(R, Rotation::Trusted{});
}

Vector3 log_so3(const Rotation& rotation)
{
    const Matrix3& R = rotation.matrix();
    const Vector3 w = 0.5 * Vector3(R(2, 1) - R(1, 2), R(0, 2) - R(2, 0), R(1, 0) - R(0, 1));
    const double cos_angle = std::clamp(0.5 * (R.trace() - 1.0), -1.0, 1.0);
    const double sin_angle = w.norm();
    const double angle = std::atan2(sin_angle, cos_angle);

    if (angle < tolerance::kSmallAngle) {
        return (1.0 + angle * angle / 6.0) * w;
    }
    if (std::numbers::pi - angle > 0.1) {
        return (angle / sin_angle) * w;
    }

    // Near a half-turn the skew part vanishes; recover the axis from the
    // dominant column of the symmetric part (1 - cos) n n^T.
    const Matrix3 S = 0.5 * (R + R.transpose()) - cos_angle * Matrix3::Identity();
    int k = 0;
    S.diagonal().maxCoeff(&k);
    Vector3 axis = S.col(k) / std::sqrt(std::max(S(k, k), 0.0));
    axis.normalize();
    if (axis.dot(w) < 0.0) {
        axis = -axis;
    }
    return angle * axis;
}

Rotation project_to_so3(const Matrix3& M)
{
    if (!M.allFinite()) {
        throw ProjectionFailed("cannot project a non-finite matrix onto SO(3)");
    }
    Eigen::JacobiSVD<Matrix3> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Vector3 sigma = svd.singularValues();
    if (!(sigma(2) > 1e-12 * sigma(0))) {
        throw ProjectionFailed("matrix is singular; no unique closest rotation");
    }
    const Matrix3& U = svd.matrixU();
    const Matrix3& V = svd.matrixV();
    Matrix3 D = Matrix3::Identity();
    D(2, 2) = (U * V.transpose()).determinant() < 0.0 ? -1.0 : 1.0;
    return Rotation(U * D * V.transpose(), Rotation::Trusted{});
}

Rotation rotation_from_spherical(double lambda, double beta)
{
    constexpr double pi = std::numbers::pi;
    if (!(lambda >= -pi && lambda <= pi) || !(beta >= -0.5 * pi && beta <= 0.5 * pi)) {
        std::ostringstream os;
        os << "spherical angles out of range: lambda = " << lambda << ", beta = " << beta;
        throw DomainError(os.str());
    }
    return exp_so3(lambda * Vector3::UnitY()) * exp_so3(beta * Vector3::UnitZ());
}

double orthogonality_error(const Matrix3& M)
{
    return (M.transpose() * M - Matrix3::Identity()).norm();
}

double spectral_norm(const Matrix3& M)
{
    return Eigen::JacobiSVD<Matrix3>(M).singularValues()(0);
}

} // namespace geoatt
