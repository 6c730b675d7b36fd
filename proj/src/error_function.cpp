#include "geoatt/error_function.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "geoatt/errors.hpp"

namespace geoatt {

GainMatrix::GainMatrix(const Vector3& diagonal) : g_(diagonal)
{
    if (!diagonal.allFinite() || (diagonal.array() <= 0.0).any()) {
        throw DomainError("gain matrix G must have positive diagonal entries");
    }
    if (diagonal(0) == diagonal(1) || diagonal(1) == diagonal(2) || diagonal(2) == diagonal(0)) {
        throw DomainError("gain matrix G must have pairwise distinct diagonal entries");
    }
}

ConstraintSpec::ConstraintSpec(const UnitVector3& direction, double theta, double alpha)
    : v_(direction), theta_(theta), alpha_(alpha), cos_theta_(std::cos(theta))
{
    if (!(theta >= 0.0 && theta <= 0.5 * std::numbers::pi)) {
        std::ostringstream os;
        os << "constraint half-angle " << theta << " rad is outside [0, pi/2]";
        throw DomainError(os.str());
    }
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw DomainError("barrier shape alpha must be positive");
    }
}

namespace {

struct BarrierTerms {
    double value;
    Vector3 gradient;
};

// Checks feasibility once and returns B and e_RB together.
BarrierTerms barrier_terms(const Matrix3& R, const SensorAxis& r, const ConstraintSpec& cs,
                           std::size_t index)
{
    const Vector3 p = R.transpose() * cs.direction().vector();
    const double x = r.vector().dot(p);
    const double gap = cs.cos_theta() - x;
    if (!(gap > 0.0)) {
        throw ConstraintViolated(index, x, cs.cos_theta());
    }
    const double value = 1.0 - std::log(gap / (1.0 + cs.cos_theta())) / cs.alpha();
    const Vector3 gradient = p.cross(r.vector()) / (cs.alpha() * (x - cs.cos_theta()));
    return {value, gradient};
}

} // namespace

double constraint_cosine(const Matrix3& R, const SensorAxis& r, const ConstraintSpec& cs)
{
    return r.vector().dot(R.transpose() * cs.direction().vector());
}

double attraction(const Matrix3& R, const Matrix3& Rd, const GainMatrix& G)
{
    const Matrix3 X = Rd.transpose() * R;
    return 0.5 * G.diagonal().dot(Vector3::Ones() - X.diagonal());
}

double barrier(const Matrix3& R, const SensorAxis& r, const ConstraintSpec& cs)
{
    return barrier_terms(R, r, cs, 0).value;
}

Vector3 attraction_gradient(const Matrix3& R, const Matrix3& Rd, const GainMatrix& G)
{
    const Matrix3 M = G.diagonal().asDiagonal() * (Rd.transpose() * R);
    return 0.5 * vee(M - M.transpose());
}

Vector3 barrier_gradient(const Matrix3& R, const SensorAxis& r, const ConstraintSpec& cs)
{
    return barrier_terms(R, r, cs, 0).gradient;
}

ErrorFunctionOutput evaluate_error(const Matrix3& R, const Matrix3& Rd, const GainMatrix& G,
                                   const SensorAxis& r, const ConstraintSpec& cs)
{
    return evaluate_error(R, Rd, G, r, std::span<const ConstraintSpec>(&cs, 1));
}

ErrorFunctionOutput evaluate_error(const Matrix3& R, const Matrix3& Rd, const GainMatrix& G,
                                   const SensorAxis& r, std::span<const ConstraintSpec> constraints)
{
    ErrorFunctionOutput out;
    out.attraction = attraction(R, Rd, G);
    out.e_RA = attraction_gradient(R, Rd, G);

    // The first barrier enters as B_0 rather than 1 + (B_0 - 1) so that the
    // single-constraint case is bit-identical to A B.
    double factor = 1.0;
    Vector3 e_RB = Vector3::Zero();
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        const BarrierTerms terms = barrier_terms(R, r, constraints[i], i);
        factor = (i == 0) ? terms.value : factor + (terms.value - 1.0);
        e_RB += terms.gradient;
    }
    out.barrier = factor;
    out.e_RB = e_RB;
    out.psi = out.attraction * factor;
    out.e_R = out.e_RA * factor + out.attraction * e_RB;
    return out;
}

Matrix3 attraction_rate_matrix(const Matrix3& R, const Matrix3& Rd, const GainMatrix& G)
{
    const Matrix3 X = R.transpose() * Rd * G.matrix();
    return 0.5 * (X.trace() * Matrix3::Identity() - X);
}

Matrix3 barrier_rate_matrix(const Matrix3& R, const SensorAxis& r, const ConstraintSpec& cs)
{
    const Vector3& v = cs.direction();
    const Vector3& rb = r;
    const Vector3 p = R.transpose() * v;
    const double x = rb.dot(p);
    const double d = x - cs.cos_theta();
    if (!(d < 0.0)) {
        throw ConstraintViolated(0, x, cs.cos_theta());
    }
    const Matrix3 curvature =
        R.transpose() * hat(v).matrix() * R * rb * (v.transpose() * R) * hat(rb).matrix();
    return (x * Matrix3::Identity() - p * rb.transpose() + curvature / d) / (cs.alpha() * d);
}

} // namespace geoatt
