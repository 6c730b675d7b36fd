#ifndef GEOATT_SO3_HPP
#define GEOATT_SO3_HPP

#include <Eigen/Dense>

namespace geoatt {

using Vector3 = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;

namespace tolerance {
// ||R^T R - I||_F and |det R - 1| for rotation-group membership.
inline constexpr double kRotation = 1e-9;
// Entrywise |M + M^T| for skew-symmetric matrices.
inline constexpr double kSkew = 1e-12;
// | ||q|| - 1 | for unit vectors.
inline constexpr double kUnit = 1e-12;
// Below this angle the exponential and logarithm switch to series forms.
inline constexpr double kSmallAngle = 1e-6;
} // namespace tolerance

/// A 3x3 matrix known to satisfy M + M^T = 0 within tolerance::kSkew.
class SkewMatrix3 {
public:
    /// Throws InvalidSkew when M is not skew-symmetric.
    explicit SkewMatrix3(const Matrix3& M);

    const Matrix3& matrix() const { return m_; }
    operator const Matrix3&() const { return m_; }

private:
    struct Trusted {};
    SkewMatrix3(const Matrix3& M, Trusted) : m_(M) {}
    friend SkewMatrix3 hat(const Vector3& x);

    Matrix3 m_;
};

/// Element of SO(3). Constructing from an arbitrary matrix validates
/// orthogonality and determinant against tolerance::kRotation.
class Rotation {
public:
    Rotation() : m_(Matrix3::Identity()) {}
    explicit Rotation(const Matrix3& M);

    static Rotation identity() { return Rotation(); }

    const Matrix3& matrix() const { return m_; }
    operator const Matrix3&() const { return m_; }

    Rotation operator*(const Rotation& other) const;
    Vector3 operator*(const Vector3& x) const { return m_ * x; }
    Rotation transpose() const;

    bool operator==(const Rotation& other) const { return m_ == other.m_; }

private:
    struct Trusted {};
    Rotation(const Matrix3& M, Trusted) : m_(M) {}
    friend Rotation exp_so3(const Vector3& x);
    friend Rotation project_to_so3(const Matrix3& M);

    Matrix3 m_;
};

/// Point on the two-sphere.
class UnitVector3 {
public:
    UnitVector3() : v_(Vector3::UnitX()) {}
    /// Throws DomainError when | ||v|| - 1 | exceeds tolerance::kUnit.
    explicit UnitVector3(const Vector3& v);

    /// Rescales v onto the sphere, leaving it bit-for-bit untouched when it is
    /// already unit within tolerance. Throws DomainError for a zero vector.
    static UnitVector3 normalized(const Vector3& v);

    const Vector3& vector() const { return v_; }
    operator const Vector3&() const { return v_; }
    double operator[](int i) const { return v_[i]; }

    bool operator==(const UnitVector3& other) const { return v_ == other.v_; }

private:
    Vector3 v_;
};

SkewMatrix3 hat(const Vector3& x);

/// Inverse of hat. Throws InvalidSkew for non-skew input.
Vector3 vee(const Matrix3& M);

/// Rodrigues exponential; rotation by ||x|| about x/||x||.
Rotation exp_so3(const Vector3& x);

/// Rotation vector with angle in [0, pi]. At angle pi one of the two valid
/// axes is returned.
Vector3 log_so3(const Rotation& R);

/// Closest rotation in the Frobenius sense (orthogonal polar factor).
/// Throws ProjectionFailed for singular or non-finite input.
Rotation project_to_so3(const Matrix3& M);

/// R = exp(lambda e2^) exp(beta e3^) with lambda in [-pi, pi] and
/// beta in [-pi/2, pi/2]. Throws DomainError outside those ranges.
Rotation rotation_from_spherical(double lambda, double beta);

/// ||R^T R - I||_F for any 3x3 matrix.
double orthogonality_error(const Matrix3& M);

/// Largest singular value.
double spectral_norm(const Matrix3& M);

} // namespace geoatt

#endif // GEOATT_SO3_HPP
