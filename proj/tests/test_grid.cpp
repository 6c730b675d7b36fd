#include <gtest/gtest.h>

#include <fstream>
#include <numbers>

#include "geoatt/errors.hpp"
#include "geoatt/grid.hpp"
#include "support.hpp"

using namespace geoatt;

constexpr double pi = std::numbers::pi;

TEST(Grid, NodeCountAndRanges)
{
    const ScenarioConfig cfg = test::paper_scenario();
    const ErrorGrid g = evaluate_error_grid(cfg.Rd, cfg.G, cfg.sensor, cfg.constraints, 9, 5);
    ASSERT_EQ(g.nodes.size(), 45u);
    EXPECT_EQ(g.at(0, 0).lambda, -pi);
    EXPECT_EQ(g.at(8, 4).lambda, pi);
    EXPECT_EQ(g.at(0, 0).elevation, -pi / 2);
    EXPECT_EQ(g.at(8, 4).elevation, pi / 2);
    for (const GridNode& n : g.nodes) {
        if (n.feasible) {
            EXPECT_TRUE(std::isfinite(n.attraction) && std::isfinite(n.barrier) &&
                        std::isfinite(n.psi));
        }
    }
    EXPECT_THROW(evaluate_error_grid(cfg.Rd, cfg.G, cfg.sensor, cfg.constraints, 1, 5), ConfigError);
}

TEST(Grid, UnconstrainedMinimumAtOrigin)
{
    const std::vector<ConstraintSpec> none;
    const ErrorGrid g = evaluate_error_grid(Matrix3::Identity(), GainMatrix(0.9, 1.1, 1.0),
                                            SensorAxis(Vector3(1, 0, 0)), none, 37, 19);
    std::size_t best = 0;
    for (std::size_t k = 0; k < g.nodes.size(); ++k) {
        if (g.nodes[k].attraction < g.nodes[best].attraction) {
            best = k;
        }
    }
    EXPECT_EQ(g.nodes[best].lambda, 0.0);
    EXPECT_EQ(g.nodes[best].elevation, 0.0);
    EXPECT_EQ(g.nodes[best].attraction, 0.0);
}

TEST(Grid, InfeasibleNodesMarked)
{
    const SensorAxis r(Vector3(1, 0, 0));
    const std::vector<ConstraintSpec> one{
        ConstraintSpec(UnitVector3(Vector3(0, 1, 0)), 30 * pi / 180, 15)};
    const ErrorGrid g =
        evaluate_error_grid(Matrix3::Identity(), GainMatrix(0.9, 1.1, 1.0), r, one, 37, 19);
    std::size_t infeasible = 0;
    for (const GridNode& n : g.nodes) {
        const Rotation R = rotation_from_spherical(n.lambda, n.elevation);
        const bool inside = constraint_cosine(R, r, one[0]) >= one[0].cos_theta();
        EXPECT_EQ(n.feasible, !inside);
        infeasible += inside ? 1 : 0;
    }
    EXPECT_GT(infeasible, 0u);

    const auto dir = test::scratch_dir("grid");
    write_error_grid(g, dir / "g.csv");
    std::ifstream in(dir / "g.csv");
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "lambda_deg,beta_deg,A,B,psi");
    std::size_t lines = 0;
    std::size_t marked = 0;
    while (std::getline(in, line)) {
        ++lines;
        if (line.find(kInfeasibleMarker) != std::string::npos) {
            ++marked;
        }
    }
    EXPECT_EQ(lines, g.nodes.size());
    EXPECT_EQ(marked, infeasible);
}

TEST(Grid, PsiIsProductAtFeasibleNodes)
{
    const ScenarioConfig cfg = test::paper_scenario();
    const ErrorGrid g = evaluate_error_grid(cfg.Rd, cfg.G, cfg.sensor, cfg.constraints, 73, 37);
    for (const GridNode& n : g.nodes) {
        if (n.feasible) {
            EXPECT_LE(std::abs(n.psi - n.attraction * n.barrier), 1e-13);
        }
    }
}

TEST(Grid, ParseResolution)
{
    const auto [rows, cols] = parse_resolution("73x37");
    EXPECT_EQ(rows, 73u);
    EXPECT_EQ(cols, 37u);
    EXPECT_THROW(parse_resolution("73"), ConfigError);
    EXPECT_THROW(parse_resolution("1x5"), ConfigError);
    EXPECT_THROW(parse_resolution("ax5"), ConfigError);
    EXPECT_THROW(parse_resolution("5x"), ConfigError);
}
