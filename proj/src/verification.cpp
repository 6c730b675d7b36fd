#include "geoatt/verification.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "geoatt/bounds.hpp"
#include "geoatt/errors.hpp"

namespace geoatt {

namespace {

Vector3 gaussian3(Rng& rng)
{
    std::normal_distribution<double> n;
    return Vector3(n(rng), n(rng), n(rng));
}

Matrix3 gaussian33(Rng& rng)
{
    std::normal_distribution<double> n;
    Matrix3 M;
    for (int i = 0; i < 9; ++i) {
        M(i / 3, i % 3) = n(rng);
    }
    return M;
}

void record(CheckResult& c, double error)
{
    ++c.samples;
    if (!(error <= c.limit)) {
        ++c.failures;
    }
    if (!std::isfinite(error) || error > c.worst) {
        c.worst = error;
    }
}

Matrix3 along(const Matrix3& R, const Vector3& direction, double t)
{
    return R * exp_so3(t * direction).matrix();
}

} // namespace

Rotation random_rotation(Rng& rng)
{
    const Eigen::HouseholderQR<Matrix3> qr(gaussian33(rng));
    Matrix3 Q = qr.householderQ();
    const Matrix3 Rf = qr.matrixQR().triangularView<Eigen::Upper>();
    // make the factorization unique so that Q is Haar distributed
    for (int j = 0; j < 3; ++j) {
        if (Rf(j, j) < 0.0) {
            Q.col(j) *= -1.0;
        }
    }
    if (Q.determinant() < 0.0) {
        Q.col(2) *= -1.0;
    }
    return project_to_so3(Q);
}

Vector3 random_unit_vector(Rng& rng)
{
    for (;;) {
        const Vector3 g = gaussian3(rng);
        const double n = g.norm();
        if (n > 1e-6) {
            return g / n;
        }
    }
}

Rotation random_feasible_rotation(Rng& rng, const SensorAxis& r,
                                  std::span<const ConstraintSpec> constraints, double margin,
                                  std::size_t max_tries)
{
    for (std::size_t k = 0; k < max_tries; ++k) {
        Rotation R = random_rotation(rng);
        const bool ok = std::all_of(constraints.begin(), constraints.end(), [&](const auto& cs) {
            return constraint_cosine(R, r, cs) < cs.cos_theta() - margin;
        });
        if (ok) {
            return R;
        }
    }
    throw Error("no feasible attitude found by rejection sampling");
}

CheckResult check_hat_identities(std::size_t n, std::uint64_t seed, double tol)
{
    Rng rng(seed);
    CheckResult c{"hat-map identities", 0, 0, 0.0, tol};
    for (std::size_t k = 0; k < n; ++k) {
        const Vector3 x = gaussian3(rng);
        const Vector3 y = gaussian3(rng);
        const Vector3 z = gaussian3(rng);
        const Matrix3 A = gaussian33(rng);
        const Matrix3 R = random_rotation(rng);
        const Matrix3 hx = hat(x);
        const Matrix3 hy = hat(y);

        double err = std::abs(x.dot(hy * z) - y.dot(hat(z).matrix() * x));
        err = std::max(err, (hx * hy * z - (x.dot(z) * y - x.dot(y) * z)).cwiseAbs().maxCoeff());
        const Matrix3 hxy = hat(x.cross(y));
        err = std::max(err, (hxy - (hx * hy - hy * hx)).cwiseAbs().maxCoeff());
        err = std::max(err, (hxy - (y * x.transpose() - x * y.transpose())).cwiseAbs().maxCoeff());
        err = std::max(err, std::abs((A * hx).trace() + x.dot(vee(A - A.transpose()))));
        err = std::max(err, (hx * A + A.transpose() * hx -
                             hat((A.trace() * Matrix3::Identity() - A) * x).matrix())
                                .cwiseAbs()
                                .maxCoeff());
        err = std::max(err, (R * hx * R.transpose() - hat(R * x).matrix()).cwiseAbs().maxCoeff());
        record(c, err);
    }
    return c;
}

CheckResult check_gradients(const Matrix3& Rd, const GainMatrix& G, const SensorAxis& r,
                            std::span<const ConstraintSpec> constraints, std::size_t n,
                            std::uint64_t seed, double h, double tol)
{
    Rng rng(seed);
    CheckResult c{"gradient finite differences", 0, 0, 0.0, tol};
    const auto diff = [&](const std::function<double(const Matrix3&)>& f, const Matrix3& R,
                          const Vector3& eta) {
        return (f(along(R, eta, h)) - f(along(R, eta, -h))) / (2.0 * h);
    };
    for (std::size_t k = 0; k < n; ++k) {
        const Rotation R = random_feasible_rotation(rng, r, constraints);
        const Vector3 eta = random_unit_vector(rng);
        const ErrorFunctionOutput out = evaluate_error(R, Rd, G, r, constraints);

        double err = std::abs(
            diff([&](const Matrix3& Q) { return attraction(Q, Rd, G); }, R, eta) -
            eta.dot(out.e_RA));
        for (const ConstraintSpec& cs : constraints) {
            const double fd = diff([&](const Matrix3& Q) { return barrier(Q, r, cs); }, R, eta);
            err = std::max(err, std::abs(fd - eta.dot(barrier_gradient(R, r, cs))));
        }
        const double fd_psi = diff(
            [&](const Matrix3& Q) { return evaluate_error(Q, Rd, G, r, constraints).psi; }, R,
            eta);
        err = std::max(err, std::abs(fd_psi - eta.dot(out.e_R)));
        record(c, err);
    }
    return c;
}

CheckResult check_error_dynamics(const Matrix3& Rd, const GainMatrix& G, const SensorAxis& r,
                                 std::span<const ConstraintSpec> constraints, std::size_t n,
                                 std::uint64_t seed, double h, double tol)
{
    Rng rng(seed);
    CheckResult c{"error dynamics E and F", 0, 0, 0.0, tol};
    for (std::size_t k = 0; k < n; ++k) {
        const Rotation R = random_feasible_rotation(rng, r, constraints);
        const Vector3 w = gaussian3(rng);

        // e_RB varies on the scale of the distance to the nearest cone, so the
        // stencil shrinks with it and stays inside the feasible set
        double margin = 1.0;
        for (const ConstraintSpec& cs : constraints) {
            margin = std::min(margin, cs.cos_theta() - constraint_cosine(R, r, cs));
        }
        const double step = std::min(h, 0.01 * margin / w.norm());
        const auto rate = [&](const std::function<Vector3(const Matrix3&)>& f) {
            return Vector3((-f(along(R, w, 2 * step)) + 8.0 * f(along(R, w, step)) -
                            8.0 * f(along(R, w, -step)) + f(along(R, w, -2 * step))) /
                           (12.0 * step));
        };
        // mixed absolute/relative comparison: the rates grow without bound near a cone
        const auto error = [](const Vector3& fd, const Vector3& exact) {
            return (fd - exact).norm() / std::max(1.0, exact.norm());
        };

        double err = error(rate([&](const Matrix3& Q) { return attraction_gradient(Q, Rd, G); }),
                           attraction_rate_matrix(R, Rd, G) * w);
        for (const ConstraintSpec& cs : constraints) {
            err = std::max(err,
                           error(rate([&](const Matrix3& Q) { return barrier_gradient(Q, r, cs); }),
                                 barrier_rate_matrix(R, r, cs) * w));
        }
        record(c, err);
    }
    return c;
}

std::vector<CheckResult> check_bound_suite(const Matrix3& Rd, const GainMatrix& G,
                                           const SensorAxis& r,
                                           std::span<const ConstraintSpec> constraints,
                                           std::size_t n, std::uint64_t seed,
                                           double psi_fraction, double beta_fraction)
{
    Rng rng(seed);
    // worst is the largest value / bound ratio; a violation is a ratio above 1
    std::vector<CheckResult> out{{"bound ||E||", 0, 0, 0.0, 1.0},
                                 {"bound ||F||", 0, 0, 0.0, 1.0},
                                 {"bound ||e_RA||", 0, 0, 0.0, 1.0},
                                 {"bound ||e_RB||", 0, 0, 0.0, 1.0},
                                 {"bound ||d/dt e_R|| <= H ||Omega||", 0, 0, 0.0, 1.0}};
    const double psi = psi_fraction * gain_constants(G).h1;
    const double E_bound = attraction_rate_bound(G);

    for (const ConstraintSpec& cs : constraints) {
        const double beta =
            cs.cos_theta() > 0.0 ? beta_fraction * cs.cos_theta() : cs.cos_theta() - 0.1;
        const DomainBounds db = make_domain_bounds(psi, beta, G, cs);
        const double F_bound = barrier_rate_bound(beta, cs);
        const double eRA_bound = attraction_gradient_bound(psi, db.b1);
        const double eRB_bound = barrier_gradient_bound(beta, cs);

        std::size_t accepted = 0;
        for (std::size_t tries = 0; accepted < n; ++tries) {
            if (tries > 1000 * n) {
                throw Error("domain sampling did not produce enough samples");
            }
            const Rotation R = random_rotation(rng);
            if (!in_domain(R, Rd, G, r, cs, db)) {
                continue;
            }
            ++accepted;
            const ErrorFunctionOutput e = evaluate_error(R, Rd, G, r, cs);
            const Matrix3 E = attraction_rate_matrix(R, Rd, G);
            const Matrix3 F = barrier_rate_matrix(R, r, cs);
            // d/dt e_R = K Omega
            const Matrix3 K = e.barrier * E + e.e_RA * e.e_RB.transpose() +
                              e.e_RB * e.e_RA.transpose() + e.attraction * F;
            record(out[0], spectral_norm(E) / E_bound);
            record(out[1], spectral_norm(F) / F_bound);
            record(out[2], e.e_RA.norm() / eRA_bound);
            record(out[3], e.e_RB.norm() / eRB_bound);
            record(out[4], spectral_norm(K) / db.H);
        }
    }
    return out;
}

CheckResult check_attraction_gradient_inequality(const Matrix3& Rd, const GainMatrix& G,
                                                 std::size_t n, std::uint64_t seed)
{
    Rng rng(seed);
    CheckResult c{"||e_RA||^2 <= A / b1", 0, 0, 0.0, 1.0};
    const double b1 = gain_constants(G).b1;
    for (std::size_t k = 0; k < n; ++k) {
        const Rotation R = random_rotation(rng);
        const double A = attraction(R, Rd, G);
        if (A <= 0.0) {
            continue;
        }
        record(c, attraction_gradient(R, Rd, G).squaredNorm() * b1 / A);
    }
    return c;
}

CheckResult check_positive_definiteness(const Matrix3& Rd, const GainMatrix& G,
                                        const SensorAxis& r,
                                        std::span<const ConstraintSpec> constraints,
                                        std::size_t n, std::uint64_t seed)
{
    Rng rng(seed);
    CheckResult c{"Psi positive definite", 0, 0, 0.0, 0.0};
    const bool rd_feasible =
        std::all_of(constraints.begin(), constraints.end(), [&](const ConstraintSpec& cs) {
            return constraint_cosine(Rd, r, cs) < cs.cos_theta();
        });
    if (rd_feasible) {
        const ErrorFunctionOutput at = evaluate_error(Rd, Rd, G, r, constraints);
        record(c, std::abs(at.psi) + at.e_R.norm());
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Rotation R = random_feasible_rotation(rng, r, constraints);
        const double psi = evaluate_error(R, Rd, G, r, constraints).psi;
        // a strictly positive value counts as zero error
        record(c, psi > 0.0 ? 0.0 : 1.0 - psi);
    }
    return c;
}

CheckResult check_lyapunov_monotone(const TrajectoryLog& log, double slack)
{
    CheckResult c{"Lyapunov function nonincreasing", 0, 0, 0.0, slack};
    for (std::size_t k = 1; k < log.samples.size(); ++k) {
        record(c, log.samples[k].V - log.samples[k - 1].V);
    }
    return c;
}

CheckResult check_lyapunov_rate(const ScenarioConfig& cfg, const TrajectoryLog& log,
                                std::size_t stride, double tol, double floor, double h)
{
    CheckResult c{"dV/dt = -k_Omega ||Omega||^2", 0, 0, 0.0, tol};
    ScenarioConfig fwd = cfg;
    fwd.dt = h;
    ScenarioConfig bwd = cfg;
    bwd.dt = -h;
    for (std::size_t k = 0; k < log.samples.size(); k += std::max<std::size_t>(stride, 1)) {
        const TrajectorySample& s = log.samples[k];
        const double expected = -cfg.gains.k_Omega() * s.omega.squaredNorm();
        if (std::abs(expected) < floor) {
            continue;
        }
        const BodyState state{Rotation(s.R), s.omega};
        const AdaptiveState adaptive{s.estimate};
        const StepResult plus = step(state, adaptive, fwd, s.t);
        const StepResult minus = step(state, adaptive, bwd, s.t);
        const double Vp = sample_state(plus.state, plus.adaptive, cfg, s.t + h).V;
        const double Vm = sample_state(minus.state, minus.adaptive, cfg, s.t - h).V;
        const double measured = (Vp - Vm) / (2.0 * h);
        record(c, std::abs(measured - expected) / std::abs(expected));
    }
    return c;
}

std::vector<CheckResult> verify_scenario(const ScenarioConfig& cfg, std::uint64_t seed)
{
    cfg.validate();
    check_feasibility(cfg);
    const Matrix3& Rd = cfg.Rd;

    std::vector<CheckResult> out;
    out.push_back(check_hat_identities(10000, seed));
    out.push_back(check_gradients(Rd, cfg.G, cfg.sensor, cfg.constraints, 1000, seed + 1));
    out.push_back(check_error_dynamics(Rd, cfg.G, cfg.sensor, cfg.constraints, 100, seed + 2));
    out.push_back(
        check_positive_definiteness(Rd, cfg.G, cfg.sensor, cfg.constraints, 1000, seed + 3));
    out.push_back(check_attraction_gradient_inequality(Rd, cfg.G, 10000, seed + 4));
    if (!cfg.constraints.empty()) {
        for (CheckResult& c :
             check_bound_suite(Rd, cfg.G, cfg.sensor, cfg.constraints, 10000, seed + 5)) {
            out.push_back(std::move(c));
        }
    }

    // one constraint through the list path must agree with the single path
    CheckResult comp{"single-constraint composition", 0, 0, 0.0, 1e-15};
    Rng rng(seed + 6);
    for (const ConstraintSpec& cs : cfg.constraints) {
        for (int k = 0; k < 100; ++k) {
            const Rotation R = random_feasible_rotation(rng, cfg.sensor, std::span(&cs, 1));
            const ErrorFunctionOutput a = evaluate_error(R, Rd, cfg.G, cfg.sensor, cs);
            const ErrorFunctionOutput b =
                evaluate_error(R, Rd, cfg.G, cfg.sensor, std::span<const ConstraintSpec>(&cs, 1));
            record(comp, std::max(std::abs(a.psi - b.psi), (a.e_R - b.e_R).cwiseAbs().maxCoeff()));
        }
    }
    if (comp.samples > 0) {
        out.push_back(comp);
    }
    return out;
}

} // namespace geoatt
