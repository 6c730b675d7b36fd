#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <numbers>

#include "geoatt/errors.hpp"
#include "geoatt/scenario_io.hpp"
#include "geoatt/verification.hpp"
#include "support.hpp"

using namespace geoatt;
using geoatt::test::gaussian_vector;

constexpr double pi = std::numbers::pi;

namespace {

std::string paper_text()
{
    std::ifstream in(test::paper_scenario_path());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

std::string replace_line(std::string text, const std::string& prefix, const std::string& with)
{
    const auto pos = text.find(prefix);
    const auto end = text.find('\n', pos);
    return text.replace(pos, end - pos, with);
}

// Random valid scenario exercising every optional field.
ScenarioConfig random_config(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Matrix3 A = test::gaussian_matrix(rng);
    Matrix3 J = A * A.transpose() + 0.1 * Matrix3::Identity();
    J = 0.5 * (J + J.transpose()).eval();
    J(1, 0) = J(0, 1);
    J(2, 0) = J(0, 2);
    J(2, 1) = J(1, 2);

    const Vector3 g(0.5 + u(rng), 1.6 + u(rng), 2.7 + u(rng));
    const SensorAxis sensor = UnitVector3::normalized(gaussian_vector(rng));
    const Rotation Rd = random_rotation(rng);

    std::vector<ConstraintSpec> cones;
    const int n = static_cast<int>(u(rng) * 4);
    for (int i = 0; i < n; ++i) {
        const double theta = (i % 2 == 0) ? u(rng) * 0.3 : std::round(u(rng) * 20.0) * pi / 180.0;
        // place the cone away from the desired sensor direction
        const Vector3 away = -(Rd.matrix() * sensor.vector()) + 0.3 * gaussian_vector(rng);
        cones.emplace_back(UnitVector3::normalized(away), theta, 1.0 + 20.0 * u(rng));
    }

    DisturbanceModel dist;
    Eigen::VectorXd est0;
    switch (static_cast<int>(u(rng) * 3)) {
    case 0:
        break;
    case 1:
        dist = DisturbanceModel::identity(0.3 * gaussian_vector(rng), 1.0 + u(rng), 5.0);
        est0 = 0.1 * gaussian_vector(rng);
        break;
    default: {
        Eigen::MatrixXd W = Eigen::MatrixXd::Random(3, 2);
        dist = DisturbanceModel::constant(W, Eigen::Vector2d(u(rng), -u(rng)));
        break;
    }
    }

    ScenarioConfig cfg{
        .inertia = InertiaMatrix(J),
        .G = GainMatrix(g),
        .gains = ControllerGains(u(rng) + 0.01, u(rng) + 0.01, u(rng) + 0.01, u(rng) + 0.01),
        .sensor = sensor,
        .constraints = cones,
        .R0 = Rd,
        .omega0 = 0.1 * gaussian_vector(rng),
        .Rd = Rd,
        .disturbance = dist,
        .estimate0 = est0,
        .mode = static_cast<ControllerMode>(static_cast<int>(u(rng) * 4)),
        .dt = 1e-3 * (1.0 + u(rng)),
        .t_final = 1.0 + 50.0 * u(rng),
        .convergence = {u(rng) * 1e-2 + 1e-6, u(rng) * 1e-2 + 1e-6, u(rng) * 2.0},
        .stop_on_convergence = u(rng) < 0.5,
        .log_decimation = 1 + static_cast<std::size_t>(u(rng) * 10),
    };
    return cfg;
}

} // namespace

TEST(LoadScenario, PaperFile)
{
    const ScenarioConfig cfg = test::paper_scenario();
    Matrix3 J;
    J << 5.57e-3, 6.17e-5, -2.50e-5, 6.17e-5, 5.57e-3, 1.00e-5, -2.50e-5, 1.00e-5, 1.05e-2;
    EXPECT_EQ(cfg.inertia.matrix(), J);
    EXPECT_EQ(cfg.G.diagonal(), Vector3(0.9, 1.1, 1.0));
    EXPECT_EQ(cfg.gains, ControllerGains(0.4, 0.296, 0.5, 1.0));
    EXPECT_EQ(cfg.sensor.vector(), Vector3(1, 0, 0));
    ASSERT_EQ(cfg.constraints.size(), 4u);
    const double thetas[] = {40, 40, 40, 20};
    const Vector3 printed[] = {{0.174, -0.934, -0.034},
                               {0, 0.7071, 0.7071},
                               {-0.853, 0.436, -0.286},
                               {-0.122, -0.140, -0.983}};
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(cfg.constraints[i].theta(), thetas[i] * pi / 180, 1e-15);
        EXPECT_EQ(cfg.constraints[i].alpha(), 15.0);
        EXPECT_LE((cfg.constraints[i].direction().vector() - printed[i].normalized()).norm(), 1e-15);
    }
    EXPECT_LE((cfg.R0.matrix() - exp_so3(Vector3(0, 0, 225 * pi / 180)).matrix()).norm(), 1e-15);
    EXPECT_EQ(cfg.Rd.matrix(), Matrix3::Identity());
    EXPECT_EQ(cfg.disturbance.kind(), DisturbanceKind::Identity);
    EXPECT_EQ(cfg.disturbance.delta(), Eigen::Vector3d(0.2, 0.2, 0.2));
    EXPECT_EQ(cfg.mode, ControllerMode::Adaptive);
    EXPECT_EQ(cfg.dt, 1e-3);
    EXPECT_EQ(cfg.t_final, 30.0);
}

TEST(LoadScenario, MissingInertiaNamesKey)
{
    const std::string text = replace_line(paper_text(), "inertia:", "");
    std::string cleaned;
    // drop the continuation lines of the removed matrix as well
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (line.rfind("          ", 0) == 0) {
            continue;
        }
        cleaned += line + "\n";
    }
    try {
        parse_scenario(cleaned);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("inertia"), std::string::npos) << e.what();
    }
}

TEST(LoadScenario, ThetaOutOfRange)
{
    const std::string text = replace_line(paper_text(), "  - {v: [0.174", "  - {v: [0.174, -0.934, -0.034], theta_deg: 95}");
    try {
        parse_scenario(text);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("theta_deg"), std::string::npos) << e.what();
    }
}

TEST(LoadScenario, UnknownKeyRejectedWithLine)
{
    const std::string text = paper_text() + "gravity: 9.81\n";
    try {
        parse_scenario(text);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("gravity"), std::string::npos) << msg;
        EXPECT_NE(msg.find("line"), std::string::npos) << msg;
    }
}

TEST(LoadScenario, BadValues)
{
    EXPECT_THROW(parse_scenario(replace_line(paper_text(), "gain_G:", "gain_G: [1, 1, 2]")),
                 ConfigError);
    EXPECT_THROW(parse_scenario(replace_line(paper_text(), "k_R:", "k_R: -0.4")), ConfigError);
    EXPECT_THROW(parse_scenario(replace_line(paper_text(), "k_R:", "k_R: fast")), ConfigError);
    EXPECT_THROW(parse_scenario(replace_line(paper_text(), "mode:", "mode: bang-bang")),
                 ConfigError);
    EXPECT_THROW(parse_scenario(replace_line(paper_text(), "dt:", "dt: 0")), ConfigError);
    EXPECT_THROW(parse_scenario(replace_line(paper_text(), "  W_kind:", "  W_kind: gravity")),
                 ConfigError);
    EXPECT_THROW(parse_scenario("inertia: [1, 2"), ConfigError);
    EXPECT_THROW(load_scenario(test::source_dir() / "no_such_file.cfg"), ConfigError);
}

TEST(LoadScenario, AxisAngleAndIdentityForms)
{
    const ScenarioConfig cfg = parse_scenario(
        replace_line(paper_text(), "R0:", "R0: {axis: [0, 0, 2], angle_deg: 90}"));
    EXPECT_LE((cfg.R0.matrix() - exp_so3(Vector3(0, 0, pi / 2)).matrix()).norm(), 1e-15);
}

TEST(ScenarioRoundTrip, PaperFileIsBitExact)
{
    const ScenarioConfig cfg = test::paper_scenario();
    const ScenarioConfig back = parse_scenario(format_scenario(cfg));
    EXPECT_TRUE(back == cfg);
    EXPECT_EQ(format_scenario(back), format_scenario(cfg));
}

TEST(ScenarioRoundTrip, RandomConfigsAreBitExact)
{
    std::mt19937_64 rng(71);
    for (int k = 0; k < 300; ++k) {
        const ScenarioConfig cfg = random_config(rng);
        const std::string text = format_scenario(cfg);
        const ScenarioConfig back = parse_scenario(text);
        ASSERT_TRUE(back == cfg) << text;
    }
}

TEST(ScenarioRoundTrip, ThroughFile)
{
    const auto dir = test::scratch_dir("roundtrip");
    const ScenarioConfig cfg = test::paper_scenario();
    write_scenario(cfg, dir / "copy.cfg");
    EXPECT_TRUE(load_scenario(dir / "copy.cfg") == cfg);
}

TEST(FormatDouble, ShortestExact)
{
    EXPECT_EQ(format_double(1.0), "1.0");
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(-2.5e-5), "-2.5e-05");
    std::mt19937_64 rng(72);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int k = 0; k < 10000; ++k) {
        const double x = u(rng) * std::pow(10.0, static_cast<int>(u(rng)) % 40);
        EXPECT_EQ(std::stod(format_double(x)), x);
    }
}
