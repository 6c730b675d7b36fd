#include <gtest/gtest.h>

#include <fstream>
#include <numbers>

#include "geoatt/errors.hpp"
#include "geoatt/trajectory_io.hpp"
#include "support.hpp"

using namespace geoatt;

namespace {

std::vector<std::string> read_lines(const std::filesystem::path& path)
{
    std::ifstream in(path);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        lines.push_back(line);
    }
    return lines;
}

} // namespace

TEST(TrajectoryColumns, GoldenHeader)
{
    const auto golden = read_lines(test::source_dir() / "tests" / "data" / "trajectory_header_p3_n4.csv");
    ASSERT_EQ(golden.size(), 1u);
    std::string header;
    for (const std::string& c : trajectory_columns(3, 4)) {
        header += (header.empty() ? "" : ",") + c;
    }
    EXPECT_EQ(header, golden[0]);

    // the paper run writes exactly the golden header
    ScenarioConfig cfg = test::paper_scenario();
    cfg.t_final = 0.01;
    const auto dir = test::scratch_dir("golden");
    write_trajectory(run(cfg).log, dir / "t.csv");
    EXPECT_EQ(read_lines(dir / "t.csv").front(), golden[0]);
}

TEST(TrajectoryColumns, DependOnDimensions)
{
    const auto cols = trajectory_columns(2, 0);
    ASSERT_EQ(cols.size(), 1u + 9 + 3 + 3 + 1 + 3 + 2 + 1);
    EXPECT_EQ(cols.back(), "V");
    EXPECT_EQ(cols[cols.size() - 2], "dbar2");
}

TEST(WriteTrajectory, ThreeSamplesGiveFourLines)
{
    ScenarioConfig cfg = test::paper_scenario();
    cfg.t_final = 0.002;
    const SimulationResult res = run(cfg);
    ASSERT_EQ(res.log.samples.size(), 3u);
    const auto dir = test::scratch_dir("three");
    write_trajectory(res.log, dir / "t.csv");
    EXPECT_EQ(read_lines(dir / "t.csv").size(), 4u);
}

TEST(WriteTrajectory, RoundTripIsBitExact)
{
    ScenarioConfig cfg = test::paper_scenario();
    cfg.t_final = 2.0;
    cfg.log_decimation = 10;
    const SimulationResult res = run(cfg);
    const auto dir = test::scratch_dir("bits");
    write_trajectory(res.log, dir / "t.csv");
    const CsvTable table = read_csv(dir / "t.csv");
    ASSERT_EQ(table.rows.size(), res.log.samples.size());
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
        const std::vector<double> expected = trajectory_row(res.log.samples[k]);
        ASSERT_EQ(table.rows[k].size(), expected.size());
        for (std::size_t j = 0; j < expected.size(); ++j) {
            ASSERT_EQ(table.rows[k][j], expected[j]) << "row " << k << " column " << table.header[j];
        }
        // raw state is reproduced exactly, not only the derived row
        const auto& s = res.log.samples[k];
        EXPECT_EQ(table.rows[k][table.column("t")], s.t);
        EXPECT_EQ(table.rows[k][table.column("R23")], s.R(1, 2));
        EXPECT_EQ(table.rows[k][table.column("W3")], s.omega(2));
        EXPECT_EQ(table.rows[k][table.column("dbar2")], s.estimate(1));
    }
}

TEST(WriteTrajectory, PaperAnglesExceedHalfAngles)
{
    const ScenarioConfig cfg = test::paper_scenario();
    const SimulationResult res = run(cfg);
    const auto dir = test::scratch_dir("angles");
    write_trajectory(res.log, dir / "t.csv");
    const CsvTable table = read_csv(dir / "t.csv");
    for (std::size_t i = 0; i < cfg.constraints.size(); ++i) {
        const std::size_t col = table.column("ang" + std::to_string(i + 1));
        const double theta_deg = cfg.constraints[i].theta() * 180.0 / std::numbers::pi;
        for (const auto& row : table.rows) {
            ASSERT_GT(row[col], theta_deg);
        }
    }
}

TEST(ReadCsv, Errors)
{
    const auto dir = test::scratch_dir("csv");
    EXPECT_THROW(read_csv(dir / "missing.csv"), Error);
    std::ofstream(dir / "bad.csv") << "a,b\n1,x\n";
    EXPECT_THROW(read_csv(dir / "bad.csv"), Error);
    std::ofstream(dir / "ragged.csv") << "a,b\n1\n";
    EXPECT_THROW(read_csv(dir / "ragged.csv"), Error);
    std::ofstream(dir / "ok.csv") << "a,b\n1,2.5\n";
    const CsvTable t = read_csv(dir / "ok.csv");
    EXPECT_EQ(t.rows[0][t.column("b")], 2.5);
    EXPECT_THROW(t.column("c"), ConfigError);
}
