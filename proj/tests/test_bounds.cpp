#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "geoatt/bounds.hpp"
#include "geoatt/controller.hpp"
#include "geoatt/errors.hpp"
#include "geoatt/verification.hpp"
#include "support.hpp"

using namespace geoatt;

constexpr double pi = std::numbers::pi;

TEST(GainConstants, PaperMatrix)
{
    const GainConstants k = gain_constants(GainMatrix(0.9, 1.1, 1.0));
    EXPECT_NEAR(k.h1, 1.9, 1e-15);
    EXPECT_NEAR(k.h2, 0.01, 1e-15);
    EXPECT_NEAR(k.h3, 3.61, 1e-15);
    EXPECT_NEAR(k.b1, 1.9 / 3.62, 1e-15);
    EXPECT_NEAR(k.b1, 0.52486, 1e-5);
}

TEST(GainConstants, IntegerMatrix)
{
    const GainConstants k = gain_constants(GainMatrix(1, 2, 3));
    EXPECT_EQ(k.h1, 3.0);
    EXPECT_EQ(k.h2, 1.0);
    EXPECT_EQ(k.h3, 9.0);
    EXPECT_NEAR(k.b1, 0.3, 1e-16);
}

// The stated inequality ||e_RA||^2 <= A / b1 does not hold near R_d. Along
// R = exp(t e1^) with R_d = I, A ~ (g2 + g3) t^2 / 4 and e_RA ~ (g2 + g3) t e1 / 2,
// so b1 ||e_RA||^2 / A -> (g2 + g3) b1, which exceeds one for the paper's G.
TEST(GainConstants, AttractionGradientInequalityCounterexample)
{
    const GainMatrix G(0.9, 1.1, 1.0);
    const double b1 = gain_constants(G).b1;
    const double limit = (1.1 + 1.0) * b1;
    ASSERT_GT(limit, 1.0);
    for (double t : {1e-2, 1e-3, 1e-4}) {
        const Rotation R = exp_so3(Vector3(t, 0, 0));
        const double ratio = attraction_gradient(R, Rotation(), G).squaredNorm() * b1 /
                             attraction(R, Rotation(), G);
        EXPECT_NEAR(ratio, limit, 1e-4);
        EXPECT_GT(ratio, 1.0);
    }
    // and a sampled rate of violation that stays rare
    const CheckResult c = check_attraction_gradient_inequality(Matrix3::Identity(), G, 10000, 3);
    EXPECT_GT(c.failures, 0u);
    EXPECT_LT(c.failures, 200u);
    EXPECT_LT(c.worst, limit + 1e-9);
}

TEST(DomainBounds, RejectsInvalidDomain)
{
    const GainMatrix G(0.9, 1.1, 1.0);
    const ConstraintSpec c(UnitVector3(Vector3(0, 1, 0)), 40 * pi / 180, 15);
    EXPECT_THROW(make_domain_bounds(1.9, 0.5, G, c), DomainError);
    EXPECT_THROW(make_domain_bounds(0.0, 0.5, G, c), DomainError);
    EXPECT_THROW(make_domain_bounds(1.0, c.cos_theta(), G, c), DomainError);
    const DomainBounds b = make_domain_bounds(1.0, 0.5, G, c);
    EXPECT_EQ(b.c_A, 1.0);
    EXPECT_EQ(b.c_B, 1.0);
    EXPECT_GT(b.H, 0.0);
    EXPECT_TRUE(std::isfinite(b.H));
}

TEST(DomainBounds, HComposition)
{
    const GainMatrix G(0.9, 1.1, 1.0);
    const ConstraintSpec c(UnitVector3(Vector3(0, 1, 0)), 40 * pi / 180, 15);
    const double psi = 0.9 * 1.9;
    const double beta = 0.9 * c.cos_theta();
    const DomainBounds b = make_domain_bounds(psi, beta, G, c);
    const double b1 = 1.9 / 3.62;
    const double E = G.trace() / std::sqrt(2.0);
    const double eRA = std::sqrt(psi / b1);
    const double eRB = std::sin(c.theta()) / (15 * (c.cos_theta() - beta));
    const double d = beta - c.cos_theta();
    const double F = ((beta * beta + 1) * d * d + 1 + beta * beta * (beta * beta - 2)) /
                     (225 * d * d * d * d);
    EXPECT_NEAR(b.H, psi * E + 2 * eRA * eRB + psi * F, 1e-12 * b.H);
}

TEST(DomainBounds, NearDesiredLimit)
{
    // as psi -> 0 the attraction-gradient term vanishes and c_B ||E|| dominates
    const GainMatrix G(0.9, 1.1, 1.0);
    const ConstraintSpec c(UnitVector3(Vector3(0, 1, 0)), 40 * pi / 180, 15);
    const double beta = 0.5 * c.cos_theta();
    const DomainBounds b = make_domain_bounds(1e-10, beta, G, c, 1e-10, 1.0);
    EXPECT_NEAR(b.H, G.trace() / std::sqrt(2.0), 1e-4);
}

TEST(DomainBounds, PaperCertificateIsFinite)
{
    const ScenarioConfig cfg = test::paper_scenario();
    const GainCertificate cert = scenario_certificate(cfg);
    EXPECT_GT(cert.H, 0.0);
    EXPECT_TRUE(std::isfinite(cert.H));
    EXPECT_NEAR(cert.lambda_M, cfg.inertia.lambda_max(), 0.0);
    // the published c = 1.0 is above the limit implied by this H
    EXPECT_FALSE(cert.certified);
    EXPECT_LT(cert.c_max, 1.0);
}

TEST(InDomain, MatchesDefinition)
{
    const ScenarioConfig cfg = test::paper_scenario();
    const ConstraintSpec& c = cfg.constraints[0];
    const DomainBounds b = make_domain_bounds(0.9 * 1.9, 0.9 * c.cos_theta(), cfg.G, c);
    EXPECT_TRUE(in_domain(Rotation(), Rotation(), cfg.G, cfg.sensor, c, b));
    EXPECT_FALSE(in_domain(exp_so3(Vector3(0, 0, pi)), Rotation(), cfg.G, cfg.sensor, c, b));
}

TEST(CMax, PositiveDefinitenessOfDecayMatrix)
{
    const double kR = 0.4, kW = 0.296, lM = 0.0105, H = 12.0;
    const double cm = c_max(kR, kW, lM, H);
    const ControllerGains good(kR, kW, 0.5, 0.99 * cm);
    const Eigen::Matrix2d M = lyapunov_decay_matrix(good, lM, H);
    EXPECT_GT(M(0, 0), 0.0);
    EXPECT_GT(M.determinant(), 0.0);
    const ControllerGains edge(kR, kW, 0.5, cm);
    EXPECT_NEAR(lyapunov_decay_matrix(edge, lM, H).determinant(), 0.0, 1e-9);
}

TEST(CMax, ZeroHLimit)
{
    EXPECT_NEAR(c_max(0.4, 0.296, 0.0105, 0.0), 4 * 0.4 / 0.296, 1e-14);
    EXPECT_NEAR(c_max(0.4, 0.296, 0.0105, 1e-12), 4 * 0.4 / 0.296, 1e-9);
}

TEST(BoundSuite, ComponentsThatHold)
{
    const ScenarioConfig cfg = test::paper_scenario();
    const auto results =
        check_bound_suite(cfg.Rd, cfg.G, cfg.sensor, cfg.constraints, 2000, 41);
    ASSERT_EQ(results.size(), 5u);
    EXPECT_TRUE(results[0].passed()) << results[0].name << " " << results[0].worst;
    EXPECT_TRUE(results[1].passed()) << results[1].name << " " << results[1].worst;
    EXPECT_TRUE(results[2].passed()) << results[2].name << " " << results[2].worst;
    EXPECT_TRUE(results[4].passed()) << results[4].name << " " << results[4].worst;
}

// The printed e_RB bound uses sin(theta) where the supremum over D is
// sqrt(1 - beta^2); a sensor direction with cosine just below beta breaks it.
TEST(BoundSuite, BarrierGradientBoundCounterexample)
{
    const GainMatrix G(0.9, 1.1, 1.0);
    const SensorAxis r(Vector3(1, 0, 0));
    const ConstraintSpec c(UnitVector3(Vector3(0, 1, 0)), 40 * pi / 180, 15);
    const double beta = 0.9 * c.cos_theta();
    const double x = beta - 1e-3;
    // rotate the sensor towards v until r^T R^T v = x
    const Rotation R = exp_so3(Vector3(0, 0, std::asin(x)));
    ASSERT_NEAR(constraint_cosine(R, r, c), x, 1e-15);
    const double bound = barrier_gradient_bound(beta, c);
    const double actual = barrier_gradient(R, r, c).norm();
    EXPECT_NEAR(actual, std::sqrt(1 - x * x) / (15 * (c.cos_theta() - x)), 1e-12);
    EXPECT_GT(actual, bound);
    EXPECT_LT(attraction(R, Rotation(), G) * barrier(R, r, c), 0.9 * 1.9);
}
