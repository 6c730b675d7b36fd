#include "geoatt/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "geoatt/errors.hpp"

namespace geoatt {

GainConstants gain_constants(const GainMatrix& G)
{
    const Vector3& g = G.diagonal();
    const double s12 = g(0) + g(1);
    const double s23 = g(1) + g(2);
    const double s31 = g(2) + g(0);
    const double d12 = g(0) - g(1);
    const double d23 = g(1) - g(2);
    const double d31 = g(2) - g(0);

    GainConstants k{};
    k.h1 = std::min({s12, s23, s31});
    k.h2 = std::min({d12 * d12, d23 * d23, d31 * d31});
    k.h3 = std::min({s12 * s12, s23 * s23, s31 * s31});
    k.b1 = k.h1 / (k.h2 + k.h3);
    return k;
}

namespace {

void check_domain(double psi_bar, double beta_bar, double h1, const ConstraintSpec& cs)
{
    if (!(psi_bar > 0.0 && psi_bar < h1)) {
        std::ostringstream os;
        os << "domain level psi = " << psi_bar << " must lie in (0, h1 = " << h1 << ")";
        throw DomainError(os.str());
    }
    if (!(beta_bar < cs.cos_theta()) || !(beta_bar >= -1.0)) {
        std::ostringstream os;
        os << "domain cosine beta = " << beta_bar << " must lie in [-1, cos(theta) = "
           << cs.cos_theta() << ")";
        throw DomainError(os.str());
    }
}

} // namespace

DomainBounds make_domain_bounds(double psi_bar, double beta_bar, const GainMatrix& G,
                                const ConstraintSpec& cs, std::optional<double> c_A,
                                std::optional<double> c_B)
{
    const GainConstants k = gain_constants(G);
    check_domain(psi_bar, beta_bar, k.h1, cs);

    DomainBounds b;
    b.psi_bar = psi_bar;
    b.beta_bar = beta_bar;
    b.c_A = c_A.value_or(psi_bar);
    b.c_B = c_B.value_or(psi_bar);
    if (!(b.c_A >= 0.0) || !(b.c_B >= 0.0)) {
        throw DomainError("bounds c_A and c_B must be nonnegative");
    }
    b.h1 = k.h1;
    b.h2 = k.h2;
    b.h3 = k.h3;
    b.b1 = k.b1;
    b.H = bound_H(b, G, cs);
    return b;
}

double attraction_rate_bound(const GainMatrix& G)
{
    return G.trace() / std::sqrt(2.0);
}

double barrier_rate_bound(double beta_bar, const ConstraintSpec& cs)
{
    const double b = beta_bar;
    const double d = b - cs.cos_theta();
    const double d2 = d * d;
    const double a2 = cs.alpha() * cs.alpha();
    return ((b * b + 1.0) * d2 + 1.0 + b * b * (b * b - 2.0)) / (a2 * d2 * d2);
}

double attraction_gradient_bound(double psi_bar, double b1)
{
    return std::sqrt(psi_bar / b1);
}

double barrier_gradient_bound(double beta_bar, const ConstraintSpec& cs)
{
    return std::sin(cs.theta()) / (cs.alpha() * (cs.cos_theta() - beta_bar));
}

double bound_H(const DomainBounds& bounds, const GainMatrix& G, const ConstraintSpec& cs)
{
    check_domain(bounds.psi_bar, bounds.beta_bar, gain_constants(G).h1, cs);
    const double b1 = gain_constants(G).b1;
    return bounds.c_B * attraction_rate_bound(G) +
           2.0 * attraction_gradient_bound(bounds.psi_bar, b1) *
               barrier_gradient_bound(bounds.beta_bar, cs) +
           bounds.c_A * barrier_rate_bound(bounds.beta_bar, cs);
}

bool in_domain(const Matrix3& R, const Matrix3& Rd, const GainMatrix& G, const SensorAxis& r,
               const ConstraintSpec& cs, const DomainBounds& bounds)
{
    const double x = constraint_cosine(R, r, cs);
    if (!(x < bounds.beta_bar)) {
        return false;
    }
    return evaluate_error(R, Rd, G, r, cs).psi < bounds.psi_bar;
}

double c_max(double k_R, double k_Omega, double lambda_M, double H)
{
    return 4.0 * k_R * k_Omega / (k_Omega * k_Omega + 4.0 * k_R * lambda_M * H);
}

} // namespace geoatt
