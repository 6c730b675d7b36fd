#ifndef GEOATT_BOUNDS_HPP
#define GEOATT_BOUNDS_HPP

#include <optional>

#include "geoatt/error_function.hpp"

namespace geoatt {

/// Constants of the gain matrix:
///   h1 = min(g1 + g2, g2 + g3, g3 + g1)
///   h2 = min((g1 - g2)^2, (g2 - g3)^2, (g3 - g1)^2)
///   h3 = min((g1 + g2)^2, (g2 + g3)^2, (g3 + g1)^2)
///   b1 = h1 / (h2 + h3)
struct GainConstants {
    double h1;
    double h2;
    double h3;
    double b1;
};

GainConstants gain_constants(const GainMatrix& G);

/// Certified bounds on the sublevel domain
///   D = { R : Psi(R) < psi_bar < h1, r^T R^T v < beta_bar < cos(theta) }.
/// c_A and c_B bound A and B on D; by default both are psi_bar.
struct DomainBounds {
    double psi_bar = 0.0;
    double beta_bar = 0.0;
    double c_A = 0.0;
    double c_B = 0.0;
    double H = 0.0;
    double b1 = 0.0;
    double h1 = 0.0;
    double h2 = 0.0;
    double h3 = 0.0;
};

/// Builds the bound record for one constraint and fills in H.
/// Throws DomainError unless 0 < psi_bar < h1 and beta_bar < cos(theta).
DomainBounds make_domain_bounds(double psi_bar, double beta_bar, const GainMatrix& G,
                                const ConstraintSpec& cs, std::optional<double> c_A = std::nullopt,
                                std::optional<double> c_B = std::nullopt);

/// ||E|| <= tr(G) / sqrt(2).
double attraction_rate_bound(const GainMatrix& G);

/// ||F|| bound on D:
///   ((b^2 + 1)(b - cos)^2 + 1 + b^2 (b^2 - 2)) / (alpha^2 (b - cos)^4).
double barrier_rate_bound(double beta_bar, const ConstraintSpec& cs);

/// ||e_RA|| <= sqrt(psi_bar / b1).
double attraction_gradient_bound(double psi_bar, double b1);

/// ||e_RB|| <= sin(theta) / (alpha (cos(theta) - beta_bar)).
double barrier_gradient_bound(double beta_bar, const ConstraintSpec& cs);

/// H = c_B ||E|| + 2 ||e_RA|| ||e_RB|| + c_A ||F|| with each factor replaced
/// by its bound, so that ||d/dt e_R|| <= H ||Omega|| on D.
double bound_H(const DomainBounds& bounds, const GainMatrix& G, const ConstraintSpec& cs);

/// Whether R lies in D for the single-constraint error function.
bool in_domain(const Matrix3& R, const Matrix3& Rd, const GainMatrix& G, const SensorAxis& r,
               const ConstraintSpec& cs, const DomainBounds& bounds);

/// Upper limit on the cross gain c of the adaptive controller:
///   4 k_R k_Omega / (k_Omega^2 + 4 k_R lambda_M H).
double c_max(double k_R, double k_Omega, double lambda_M, double H);

} // namespace geoatt

#endif // GEOATT_BOUNDS_HPP
