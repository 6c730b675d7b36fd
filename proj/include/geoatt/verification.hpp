#ifndef GEOATT_VERIFICATION_HPP
#define GEOATT_VERIFICATION_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "geoatt/simulator.hpp"

namespace geoatt {

using Rng = std::mt19937_64;

/// Haar-distributed rotation (QR of a Gaussian matrix with sign fix).
Rotation random_rotation(Rng& rng);
Vector3 random_unit_vector(Rng& rng);
/// Haar samples rejected until every constraint holds with margin `margin`
/// on the cosine. Throws Error after max_tries.
Rotation random_feasible_rotation(Rng& rng, const SensorAxis& r,
                                  std::span<const ConstraintSpec> constraints,
                                  double margin = 0.0, std::size_t max_tries = 100000);

/// Outcome of one sampled property check. `worst` is the largest observed
/// error (or bound ratio) and `limit` the value it is compared against.
struct CheckResult {
    std::string name;
    std::size_t samples = 0;
    std::size_t failures = 0;
    double worst = 0.0;
    double limit = 0.0;
    bool passed() const { return samples > 0 && failures == 0; }
};

/// The six hat-map identities on n random triples (x, y, z), matrices A and
/// rotations R, with absolute tolerance tol.
CheckResult check_hat_identities(std::size_t n, std::uint64_t seed, double tol = 1e-12);

/// Central differences of A, each B_i and the composite Psi along random
/// directions eta at random feasible attitudes, against eta . e_RA,
/// eta . e_RB,i and eta . e_R.
CheckResult check_gradients(const Matrix3& Rd, const GainMatrix& G, const SensorAxis& r,
                            std::span<const ConstraintSpec> constraints, std::size_t n,
                            std::uint64_t seed, double h = 1e-7, double tol = 1e-6);

/// Along R(t) = R exp(t Omega^) with random R and Omega, five-point
/// differences of e_RA and each e_RB,i against E Omega and F Omega. The step
/// is h, reduced near a cone boundary; the error is
/// ||fd - exact|| / max(1, ||exact||).
CheckResult check_error_dynamics(const Matrix3& Rd, const GainMatrix& G, const SensorAxis& r,
                                 std::span<const ConstraintSpec> constraints, std::size_t n,
                                 std::uint64_t seed, double h = 1e-4, double tol = 1e-6);

/// Monte-Carlo samples of the single-constraint domain
/// { Psi < psi_fraction h1, r^T R^T v < beta } per constraint, with beta as in
/// scenario_certificate. Returns one result per bound: E, F, e_RA, e_RB and
/// the e_R rate bound H (worst = largest ratio observed / bound).
std::vector<CheckResult> check_bound_suite(const Matrix3& Rd, const GainMatrix& G,
                                           const SensorAxis& r,
                                           std::span<const ConstraintSpec> constraints,
                                           std::size_t n, std::uint64_t seed,
                                           double psi_fraction = 0.9, double beta_fraction = 0.9);

/// The inequality ||e_RA||^2 <= A / b1 on random rotations.
CheckResult check_attraction_gradient_inequality(const Matrix3& Rd, const GainMatrix& G,
                                                 std::size_t n, std::uint64_t seed);

/// Psi >= 0 on random feasible attitudes, Psi = 0 and e_R = 0 at Rd.
CheckResult check_positive_definiteness(const Matrix3& Rd, const GainMatrix& G,
                                        const SensorAxis& r,
                                        std::span<const ConstraintSpec> constraints,
                                        std::size_t n, std::uint64_t seed);

/// Consecutive logged V values: counts increases larger than `slack`.
/// `worst` is the largest increase.
CheckResult check_lyapunov_monotone(const TrajectoryLog& log, double slack = 1e-8);

/// For the smooth controller without disturbance: a central difference of V
/// along the closed-loop flow at logged states matches -k_Omega ||Omega||^2
/// within relative tolerance. Samples where |k_Omega ||Omega||^2| < floor are
/// skipped.
CheckResult check_lyapunov_rate(const ScenarioConfig& cfg, const TrajectoryLog& log,
                                std::size_t stride, double tol = 1e-6, double floor = 1e-4,
                                double h = 1e-5);

/// Property/oracle suite on a scenario's parameters, as run by `verify`.
std::vector<CheckResult> verify_scenario(const ScenarioConfig& cfg, std::uint64_t seed = 1);

} // namespace geoatt

#endif // GEOATT_VERIFICATION_HPP
